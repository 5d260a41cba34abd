//! Small trees used to show the variance of the paired domination number
//! is nondegenerate: a height-3 tree `tau0` whose root label cannot be
//! changed by anything hanging below it, and two equal-size full `d0`-ary
//! trees `t1`, `t2` with paired domination numbers 4 and 6.

use crate::tree::RootedTree;

#[derive(Debug, Clone)]
pub struct Fixtures {
    pub tau0: RootedTree,
    pub t1: RootedTree,
    pub t2: RootedTree,
    pub tau1: RootedTree,
    pub tau2: RootedTree,
}

/// Ordered tree under construction; child order is insertion order.
struct Builder {
    children: Vec<Vec<usize>>,
}

impl Builder {
    fn new() -> Self {
        Builder { children: vec![Vec::new()] }
    }

    fn child(&mut self, v: usize) -> usize {
        let id = self.children.len();
        self.children.push(Vec::new());
        self.children[v].push(id);
        id
    }

    fn leaves(&mut self, v: usize, k: usize) {
        for _ in 0..k {
            self.child(v);
        }
    }

    fn rightmost_at_depth(&self, depth: usize) -> usize {
        let mut v = 0;
        for _ in 0..depth {
            v = *self.children[v].last().expect("tree is deep enough");
        }
        v
    }

    fn build(&self) -> RootedTree {
        // Preorder ranks keep each child list in insertion order.
        let mut rank = vec![0usize; self.children.len()];
        let mut parent = Vec::with_capacity(self.children.len());
        let mut stack = vec![(0usize, 0usize)];
        while let Some((v, p)) = stack.pop() {
            parent.push(p);
            rank[v] = parent.len();
            for &c in self.children[v].iter().rev() {
                stack.push((c, v));
            }
        }
        let raw: Vec<usize> = parent.iter().enumerate().map(|(i, &p)| if i == 0 { 0 } else { rank[p] }).collect();
        RootedTree::from_parent_array(&raw).expect("builder produces a tree").canonical()
    }
}

fn grow_tau0(b: &mut Builder, root: usize, d0: usize) {
    let first = b.child(root);
    b.leaves(first, d0);
    b.leaves(root, d0 - 2);
    let last = b.child(root);
    b.leaves(last, d0 - 1);
    let deep = b.child(last);
    b.leaves(deep, d0);
}

fn grow_t1(b: &mut Builder, root: usize, d0: usize) {
    let a = b.child(root);
    b.leaves(root, d0 - 2);
    let c = b.child(root);
    let a1 = b.child(a);
    b.leaves(a1, d0);
    b.leaves(a, d0 - 1);
    b.leaves(c, d0 - 1);
    let c_last = b.child(c);
    b.leaves(c_last, d0);
}

fn grow_t2(b: &mut Builder, root: usize, d0: usize) {
    let a = b.child(root);
    b.leaves(a, d0);
    b.leaves(root, d0 - 2);
    let c = b.child(root);
    let c1 = b.child(c);
    b.leaves(c1, d0);
    b.leaves(c, d0 - 2);
    let c_last = b.child(c);
    b.leaves(c_last, d0);
}

fn single(grow: fn(&mut Builder, usize, usize), d0: usize) -> RootedTree {
    let mut b = Builder::new();
    grow(&mut b, 0, d0);
    b.build()
}

// The rightmost depth-3 leaf of tau0 becomes the root of the attached tree,
// so every outdegree stays in {0, d0}.
fn attached(grow: fn(&mut Builder, usize, usize), d0: usize) -> RootedTree {
    let mut b = Builder::new();
    grow_tau0(&mut b, 0, d0);
    let leaf = b.rightmost_at_depth(3);
    grow(&mut b, leaf, d0);
    b.build()
}

/// Builds `tau0`, `t1`, `t2` and `tau1`/`tau2` (`t1`/`t2` grafted onto the
/// rightmost depth-3 leaf of `tau0`). Panics if `d0 < 2`.
pub fn build_fixtures(d0: usize) -> Fixtures {
    assert!(d0 >= 2, "d0 must be at least 2");
    Fixtures {
        tau0: single(grow_tau0, d0),
        t1: single(grow_t1, d0),
        t2: single(grow_t2, d0),
        tau1: attached(grow_t1, d0),
        tau2: attached(grow_t2, d0),
    }
}
