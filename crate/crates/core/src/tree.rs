//! Rooted ordered trees stored as 1-based parent arrays.
//!
//! Vertex ranks run from 1 to `n`; slot 0 is reserved for a dummy vertex so
//! that `parent[1] = 0` and the paired-domination algorithm can write through
//! `parent[parent[..]]` chains without bounds checks. The ordering of the
//! children of a vertex is the ascending order of their ranks.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("empty parent array")]
    Empty,
    #[error("vertex 1 must be the root (parent 0), found parent {0}")]
    RootNotFirst(usize),
    #[error("vertex {vertex} has parent rank {parent} outside [0, {n}]")]
    DanglingParentRank { vertex: usize, parent: usize, n: usize },
    #[error("vertex {0} has parent 0 but only vertex 1 may be the root")]
    MultipleRoots(usize),
    #[error("parent relation contains a cycle (only {reached} of {n} vertices reachable from the root)")]
    CycleDetected { reached: usize, n: usize },
    #[error("Pruefer entry {value} at position {position} outside [1, {n}]")]
    SequenceEntryOutOfRange { position: usize, value: usize, n: usize },
    #[error("root label {root} outside [1, {n}]")]
    RootOutOfRange { root: usize, n: usize },
    #[error("degree prefix of length {k} sums to {sum} < {k}")]
    InvalidPrefix { k: usize, sum: usize },
    #[error("degrees sum to {sum}, expected {expected}")]
    WrongTotal { sum: usize, expected: usize },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("expected {expected} parent entries, found {found}")]
    TokenCount { expected: usize, found: usize },
    #[error("malformed parent entry {0:?}")]
    MalformedToken(String),
}

/// An ordered rooted tree on ranks `1..=n`, rooted at rank 1.
#[derive(Debug, Clone)]
pub struct RootedTree {
    parent: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    depth: Vec<usize>,
    bfs_monotone: bool,
    original_labels: Option<Vec<usize>>,
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent
    }
}

impl Eq for RootedTree {}

impl RootedTree {
    /// Builds a tree from `raw[k] = parent of vertex k + 1`, with `raw[0] = 0`.
    pub fn from_parent_array(raw: &[usize]) -> Result<Self, TreeError> {
        if raw.is_empty() {
            return Err(TreeError::Empty);
        }
        if raw[0] != 0 {
            return Err(TreeError::RootNotFirst(raw[0]));
        }
        let n = raw.len();
        let mut parent = Vec::with_capacity(n + 1);
        parent.push(0);
        parent.extend_from_slice(raw);
        for v in 2..=n {
            let p = parent[v];
            if p == 0 {
                return Err(TreeError::MultipleRoots(v));
            }
            if p > n {
                return Err(TreeError::DanglingParentRank { vertex: v, parent: p, n });
            }
        }
        Self::from_checked_parents(parent)
    }

    /// `parent` has length n + 1 with `parent[0] = parent[1] = 0` and every
    /// other entry in `[1, n]`; acyclicity is checked here.
    fn from_checked_parents(parent: Vec<usize>) -> Result<Self, TreeError> {
        let n = parent.len() - 1;
        let mut child_start = vec![0usize; n + 2];
        for v in 2..=n {
            child_start[parent[v] + 1] += 1;
        }
        for v in 1..=n + 1 {
            child_start[v] += child_start[v - 1];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; n.saturating_sub(1)];
        for v in 2..=n {
            let p = parent[v];
            child_list[fill[p]] = v;
            fill[p] += 1;
        }

        let mut depth = vec![usize::MAX; n + 1];
        depth[0] = 0;
        depth[1] = 0;
        let mut queue = VecDeque::with_capacity(n);
        queue.push_back(1);
        let mut reached = 0;
        while let Some(v) = queue.pop_front() {
            reached += 1;
            for &c in &child_list[child_start[v]..child_start[v + 1]] {
                depth[c] = depth[v] + 1;
                queue.push_back(c);
            }
        }
        if reached != n {
            return Err(TreeError::CycleDetected { reached, n });
        }
        let bfs_monotone = (2..=n).all(|v| depth[v - 1] <= depth[v]);

        Ok(RootedTree {
            parent,
            child_start,
            child_list,
            depth,
            bfs_monotone,
            original_labels: None,
        })
    }

    pub fn single_vertex() -> Self {
        Self::from_checked_parents(vec![0, 0]).expect("single vertex is a tree")
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Parent array of length n + 1; index 0 is the dummy vertex.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    /// Children of `v` in ascending rank order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.child_start[v + 1] - self.child_start[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth[1..].iter().copied().max().unwrap_or(0)
    }

    /// True iff `i < j` implies `depth(i) <= depth(j)`.
    pub fn is_bfs_monotone(&self) -> bool {
        self.bfs_monotone
    }

    /// Labels carried over from a labelled construction (Pruefer decoding),
    /// indexed by `rank - 1`.
    pub fn original_labels(&self) -> Option<&[usize]> {
        self.original_labels.as_deref()
    }

    /// Undirected edges `(parent, child)` in child-rank order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (2..=self.len()).map(move |v| (self.parent[v], v))
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        (a != b) && ((a >= 2 && self.parent[a] == b) || (b >= 2 && self.parent[b] == a))
    }

    /// Number of vertices at each depth, starting at the root.
    pub fn depth_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.height() + 1];
        for v in 1..=self.len() {
            profile[self.depth[v]] += 1;
        }
        profile
    }

    /// Ranks in preorder (children visited in ascending rank order).
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![1usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        order
    }

    /// Ranks ordered so that every vertex precedes its parent.
    pub fn bottom_up_order(&self) -> Vec<usize> {
        if self.bfs_monotone {
            return (1..=self.len()).rev().collect();
        }
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Subtree size of every vertex, indexed by rank (slot 0 unused).
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.len() + 1];
        size[0] = 0;
        for v in self.bottom_up_order() {
            if v != 1 {
                size[self.parent[v]] += size[v];
            }
        }
        size
    }

    /// Depth-first outdegree sequence (the Lukasiewicz word of the tree).
    pub fn dfs_outdegrees(&self) -> DegreeSequence {
        DegreeSequence {
            degs: self.preorder().into_iter().map(|v| self.out_degree(v)).collect(),
        }
    }

    /// Relabels ranks level by level: root first, then the children of each
    /// vertex in the order its parent was ranked, keeping child order.
    /// Returns the new tree and `perm` with `perm[old] = new` (`perm[0] = 0`).
    pub fn bfs_canonicalize(&self) -> (RootedTree, Vec<usize>) {
        let n = self.len();
        let mut perm = vec![0usize; n + 1];
        let mut order = Vec::with_capacity(n);
        order.push(1);
        perm[1] = 1;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in self.children(v) {
                order.push(c);
                perm[c] = order.len();
            }
        }
        let mut parent = vec![0usize; n + 1];
        for old in 2..=n {
            parent[perm[old]] = perm[self.parent[old]];
        }
        let mut tree = Self::from_checked_parents(parent).expect("relabelling preserves tree shape");
        if let Some(labels) = &self.original_labels {
            let mut relabelled = vec![0; n];
            for old in 1..=n {
                relabelled[perm[old] - 1] = labels[old - 1];
            }
            tree.original_labels = Some(relabelled);
        }
        (tree, perm)
    }

    /// BFS-canonical form, discarding the permutation.
    pub fn canonical(&self) -> RootedTree {
        if self.bfs_monotone && self.is_level_ordered() {
            return self.clone();
        }
        self.bfs_canonicalize().0
    }

    // Level order additionally requires children of lower-ranked parents to
    // come first, which is exactly a non-decreasing parent array.
    fn is_level_ordered(&self) -> bool {
        (3..=self.len()).all(|v| self.parent[v - 1] <= self.parent[v])
    }

    /// Decodes a Pruefer sequence over labels `1..=n` (n = len + 2), roots the
    /// labelled tree at `root`, orders children by label, and canonicalizes.
    pub fn from_pruefer(seq: &[usize], root: usize) -> Result<RootedTree, TreeError> {
        let n = seq.len() + 2;
        for (position, &value) in seq.iter().enumerate() {
            if value == 0 || value > n {
                return Err(TreeError::SequenceEntryOutOfRange { position, value, n });
            }
        }
        if root == 0 || root > n {
            return Err(TreeError::RootOutOfRange { root, n });
        }
        let edges = pruefer_edges(seq);
        let mut adj: Vec<(usize, usize)> = Vec::with_capacity(2 * edges.len());
        for &(a, b) in &edges {
            adj.push((a, b));
            adj.push((b, a));
        }
        adj.sort_unstable();
        let mut start = vec![0usize; n + 2];
        for &(a, _) in &adj {
            start[a + 1] += 1;
        }
        for v in 1..=n + 1 {
            start[v] += start[v - 1];
        }

        // BFS from the root directly yields level-ordered ranks.
        let mut rank = vec![0usize; n + 1];
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![0usize; n + 1];
        order.push(root);
        rank[root] = 1;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &(_, w) in &adj[start[u]..start[u + 1]] {
                if rank[w] == 0 {
                    order.push(w);
                    rank[w] = order.len();
                    parent[rank[w]] = rank[u];
                }
            }
        }
        let mut tree = Self::from_checked_parents(parent)?;
        tree.original_labels = Some(order);
        Ok(tree)
    }

    /// Builds the ordered tree whose preorder outdegrees are `degs`.
    pub fn from_lukasiewicz(degs: &DegreeSequence) -> RootedTree {
        let d = degs.as_slice();
        let n = d.len();
        let mut parent = vec![0usize; n + 1];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for (k, &deg) in d.iter().enumerate() {
            let v = k + 1;
            if v > 1 {
                let top = stack.last_mut().expect("valid Lukasiewicz word");
                parent[v] = top.0;
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if deg > 0 {
                stack.push((v, deg));
            }
        }
        let tree = Self::from_checked_parents(parent).expect("valid Lukasiewicz word");
        tree.canonical()
    }

    /// Line-oriented text form: `n` on the first line, parent ranks on the second.
    pub fn serialize(&self) -> String {
        let mut out = self.len().to_string();
        out.push('\n');
        let body: Vec<String> = self.parent[1..].iter().map(|p| p.to_string()).collect();
        out.push_str(&body.join(" "));
        out
    }

    pub fn parse(text: &str) -> Result<RootedTree, TreeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| TreeError::MalformedHeader("missing vertex count".into()))?
            .trim();
        let n: usize = header
            .parse()
            .map_err(|_| TreeError::MalformedHeader(header.to_string()))?;
        if n == 0 {
            return Err(TreeError::MalformedHeader("vertex count must be positive".into()));
        }
        let raw = lines
            .flat_map(|l| l.split_whitespace())
            .map(|tok| tok.parse::<usize>().map_err(|_| TreeError::MalformedToken(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if raw.len() != n {
            return Err(TreeError::TokenCount { expected: n, found: raw.len() });
        }
        Self::from_parent_array(&raw)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for RootedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Linear-time Pruefer decoding into labelled edges.
pub fn pruefer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n));
    edges
}

/// Preorder outdegrees of an ordered tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degs: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degs: Vec<usize>) -> Result<Self, TreeError> {
        let n = degs.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut sum = 0usize;
        for (k, &d) in degs.iter().enumerate().take(n - 1) {
            sum += d;
            if sum < k + 1 {
                return Err(TreeError::InvalidPrefix { k: k + 1, sum });
            }
        }
        sum += degs[n - 1];
        if sum != n - 1 {
            return Err(TreeError::WrongTotal { sum, expected: n - 1 });
        }
        Ok(DegreeSequence { degs })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degs
    }

    pub fn len(&self) -> usize {
        self.degs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degs.is_empty()
    }

    /// `tally()[j]` is the number of vertices with outdegree `j`.
    pub fn tally(&self) -> Vec<usize> {
        let max = self.degs.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for &d in &self.degs {
            counts[d] += 1;
        }
        counts
    }

    /// Every valid sequence of length `n`, in lexicographic order. There are
    /// Catalan(n - 1) of them.
    pub fn enumerate(n: usize) -> Vec<DegreeSequence> {
        fn extend(prefix: &mut Vec<usize>, open: usize, n: usize, out: &mut Vec<DegreeSequence>) {
            // `open` counts child slots still unfilled after `prefix`.
            let remaining = n - prefix.len();
            if remaining == 0 {
                if open == 0 {
                    out.push(DegreeSequence { degs: prefix.clone() });
                }
                return;
            }
            if open == 0 {
                return;
            }
            // The next vertex fills one slot and opens `d` new ones; the
            // remaining vertices after it must be able to fill them all.
            let max_d = remaining - open;
            for d in 0..=max_d {
                prefix.push(d);
                extend(prefix, open - 1 + d, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for d in 0..n {
            let mut prefix = vec![d];
            extend(&mut prefix, d, n, &mut out);
        }
        out
    }
}

/// Index of the unique rotation of `degs` (which must sum to `len - 1`)
/// that is a valid Lukasiewicz word.
pub fn cycle_lemma_rotation(degs: &[usize]) -> usize {
    let mut walk: i64 = 0;
    let mut min = 0i64;
    let mut arg = 0usize;
    for (k, &d) in degs.iter().enumerate() {
        if walk < min {
            min = walk;
            arg = k;
        }
        walk += d as i64 - 1;
    }
    arg
}
