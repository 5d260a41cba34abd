//! The bottom-up paired-domination algorithm and its B/F/R/P labelling.
//!
//! Vertices are processed from rank `n` down to 2 over a BFS-monotone tree,
//! maintaining two flags per vertex (`in_pd_set`, `dom_by_child`). Pairs are
//! recorded at the three places the algorithm inserts vertices, so the output
//! carries an explicit perfect matching of the PD-set.

mod fixtures;
mod oracle;

use std::fmt;

use thiserror::Error;

use crate::tree::RootedTree;

pub use fixtures::{build_fixtures, Fixtures};
pub use oracle::{gamma_pr_bruteforce, verify_pd_set, PdViolation, MAX_BRUTEFORCE_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("paired domination is undefined for a single vertex")]
    SingleVertex,
    #[error("vertex ranks are not BFS-monotone; canonicalize the tree first")]
    NotCanonical,
    #[error("brute force supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    B,
    F,
    R,
    P,
}

impl VertexLabel {
    pub const ALL: [VertexLabel; 4] = [VertexLabel::B, VertexLabel::F, VertexLabel::R, VertexLabel::P];

    pub fn as_char(self) -> char {
        match self {
            VertexLabel::B => 'B',
            VertexLabel::F => 'F',
            VertexLabel::R => 'R',
            VertexLabel::P => 'P',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'B' => Some(VertexLabel::B),
            'F' => Some(VertexLabel::F),
            'R' => Some(VertexLabel::R),
            'P' => Some(VertexLabel::P),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Output of [`gamma_pr_linear`]. Per-vertex arrays are indexed by rank and
/// have length `n + 1`; slot 0 is the dummy vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdResult {
    in_pd_set: Vec<bool>,
    dom_by_child: Vec<bool>,
    partner: Vec<usize>,
    labels: Vec<VertexLabel>,
    phi: usize,
    gamma_pr: usize,
}

impl PdResult {
    pub fn len(&self) -> usize {
        self.in_pd_set.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn gamma_pr(&self) -> usize {
        self.gamma_pr
    }

    /// Number of R-labelled vertices.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn in_pd_set(&self, v: usize) -> bool {
        self.in_pd_set[v]
    }

    pub fn dom_by_child(&self, v: usize) -> bool {
        self.dom_by_child[v]
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        Some(self.partner[v]).filter(|&p| p != 0)
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v - 1]
    }

    /// Labels indexed by `rank - 1`.
    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    /// PD-set members in ascending rank order.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&v| self.in_pd_set[v]).collect()
    }

    /// Matched pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .filter_map(|v| self.partner(v).filter(|&p| v < p).map(|p| (v, p)))
            .collect()
    }

    /// Re-expresses the result over other ranks; `perm[old] = new` as
    /// returned by [`RootedTree::bfs_canonicalize`], so this maps canonical
    /// ranks back to the original ones.
    pub fn unpermute(&self, perm: &[usize]) -> PdResult {
        let n = self.len();
        let mut out = self.clone();
        for old in 1..=n {
            let new = perm[old];
            out.in_pd_set[old] = self.in_pd_set[new];
            out.dom_by_child[old] = self.dom_by_child[new];
            out.labels[old - 1] = self.labels[new - 1];
            out.partner[old] = 0;
        }
        let mut inverse = vec![0usize; n + 1];
        for old in 1..=n {
            inverse[perm[old]] = old;
        }
        for old in 1..=n {
            let p = self.partner[perm[old]];
            if p != 0 {
                out.partner[old] = inverse[p];
            }
        }
        out
    }
}

/// Runs the linear-time algorithm on a BFS-monotone tree of order at least 2.
pub fn gamma_pr_linear(tree: &RootedTree) -> Result<PdResult, PdError> {
    let n = tree.len();
    if n < 2 {
        return Err(PdError::SingleVertex);
    }
    if !tree.is_bfs_monotone() {
        return Err(PdError::NotCanonical);
    }
    let parent = tree.parents();
    let mut in_pd = vec![false; n + 1];
    let mut dom = vec![false; n + 1];
    let mut partner = vec![0usize; n + 1];
    let mut labels = vec![VertexLabel::B; n];
    let mut has_r_child = vec![false; n + 1];

    let label_now = |in_pd: &[bool], dom: &[bool], has_r_child: &[bool], i: usize| match (in_pd[i], dom[i]) {
        (false, false) => VertexLabel::B,
        (false, true) => VertexLabel::F,
        (true, _) if !has_r_child[i] => VertexLabel::R,
        (true, _) => VertexLabel::P,
    };

    for i in (2..=n).rev() {
        let p = parent[i];
        let g = parent[p];

        let l = label_now(&in_pd, &dom, &has_r_child, i);
        labels[i - 1] = l;
        if l == VertexLabel::R {
            has_r_child[p] = true;
        }

        if !dom[i] && !in_pd[p] && p != 1 && !in_pd[g] {
            in_pd[p] = true;
            in_pd[g] = true;
            dom[g] = true;
            // parent[1] = 0, so this may land on the dummy slot.
            dom[parent[g]] = true;
            partner[p] = g;
            partner[g] = p;
        }

        if !dom[i] && !in_pd[p] && (p == 1 || in_pd[g]) {
            in_pd[p] = true;
            let i1 = *tree
                .children(p)
                .iter()
                .rev()
                .find(|&&c| !in_pd[c])
                .expect("vertex i is never in the set when this branch fires");
            in_pd[i1] = true;
            dom[p] = true;
            partner[p] = i1;
            partner[i1] = p;
        }
    }

    labels[0] = label_now(&in_pd, &dom, &has_r_child, 1);

    if !dom[1] {
        in_pd[1] = true;
        in_pd[2] = true;
        dom[1] = true;
        partner[1] = 2;
        partner[2] = 1;
    }
    dom[0] = false;

    let gamma_pr = in_pd.iter().filter(|&&b| b).count();
    let phi = phi_from_labels(&labels);
    Ok(PdResult {
        in_pd_set: in_pd,
        dom_by_child: dom,
        partner,
        labels,
        phi,
        gamma_pr,
    })
}

/// Canonicalizes an arbitrary tree, runs [`gamma_pr_linear`], and reports
/// the result in the tree's own ranks.
pub fn solve(tree: &RootedTree) -> Result<PdResult, PdError> {
    if tree.is_bfs_monotone() {
        return gamma_pr_linear(tree);
    }
    let (canonical, perm) = tree.bfs_canonicalize();
    Ok(gamma_pr_linear(&canonical)?.unpermute(&perm))
}

/// Labels computed bottom-up purely from the labels of each vertex's
/// children. Indexed by `rank - 1`. Works on any valid tree.
pub fn label_recursive(tree: &RootedTree) -> Vec<VertexLabel> {
    let n = tree.len();
    let mut labels = vec![VertexLabel::B; n];
    for v in tree.bottom_up_order() {
        let mut any_b = false;
        let mut any_r = false;
        let mut any_p = false;
        for &c in tree.children(v) {
            match labels[c - 1] {
                VertexLabel::B => any_b = true,
                VertexLabel::R => any_r = true,
                VertexLabel::P => any_p = true,
                VertexLabel::F => {}
            }
        }
        labels[v - 1] = if any_r {
            VertexLabel::P
        } else if any_b {
            VertexLabel::R
        } else if any_p {
            VertexLabel::F
        } else {
            VertexLabel::B
        };
    }
    labels
}

/// Number of R labels.
pub fn phi_from_labels(labels: &[VertexLabel]) -> usize {
    labels.iter().filter(|&&l| l == VertexLabel::R).count()
}

/// `2 * phi + 2 * [root is B]`. For a single vertex the value is reported
/// but marked vacuous, since the paired domination number needs `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelGamma {
    pub gamma: usize,
    pub vacuous: bool,
}

/// Labels must be indexed by `rank - 1`, so `labels[0]` is the root.
pub fn gamma_from_labels(labels: &[VertexLabel]) -> LabelGamma {
    let root_bonus = if labels.first() == Some(&VertexLabel::B) { 2 } else { 0 };
    LabelGamma {
        gamma: 2 * phi_from_labels(labels) + root_bonus,
        vacuous: labels.len() < 2,
    }
}
