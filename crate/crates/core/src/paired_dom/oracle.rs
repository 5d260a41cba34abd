//! Exhaustive reference computation and a PD-set checker.

use thiserror::Error;

use super::PdError;
use crate::tree::RootedTree;

pub const MAX_BRUTEFORCE_ORDER: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdViolation {
    #[error("vertex {0} is outside the tree")]
    OutOfRange(usize),
    #[error("member {0} has no partner")]
    OddMember(usize),
    #[error("pairing is not a fixed-point-free involution on the members at vertex {0}")]
    NotInvolution(usize),
    #[error("paired vertices {0} and {1} are not adjacent")]
    PairNotAdjacent(usize, usize),
    #[error("vertex {0} has no neighbour in the set")]
    NotDominating(usize),
}

/// Checks that `members` dominates the tree and that `pairs` is a perfect
/// matching of the subgraph induced by `members`.
pub fn verify_pd_set(tree: &RootedTree, members: &[usize], pairs: &[(usize, usize)]) -> Result<(), PdViolation> {
    let n = tree.len();
    let mut is_member = vec![false; n + 1];
    for &v in members {
        if v == 0 || v > n {
            return Err(PdViolation::OutOfRange(v));
        }
        is_member[v] = true;
    }
    let mut partner = vec![0usize; n + 1];
    for &(a, b) in pairs {
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(PdViolation::OutOfRange(v));
            }
            if !is_member[v] || partner[v] != 0 {
                return Err(PdViolation::NotInvolution(v));
            }
        }
        if a == b {
            return Err(PdViolation::NotInvolution(a));
        }
        partner[a] = b;
        partner[b] = a;
    }
    if let Some(&v) = members.iter().find(|&&v| partner[v] == 0) {
        return Err(PdViolation::OddMember(v));
    }
    for &(a, b) in pairs {
        if !tree.are_adjacent(a, b) {
            return Err(PdViolation::PairNotAdjacent(a.min(b), a.max(b)));
        }
    }
    let mut has_member_nbr = vec![false; n + 1];
    for (p, c) in tree.edges() {
        if is_member[p] {
            has_member_nbr[c] = true;
        }
        if is_member[c] {
            has_member_nbr[p] = true;
        }
    }
    if let Some(v) = (1..=n).find(|&v| !has_member_nbr[v]) {
        return Err(PdViolation::NotDominating(v));
    }
    Ok(())
}

/// Minimum paired dominating set size by exhaustive search over vertex
/// subsets of increasing even size. Limited to 18 vertices.
pub fn gamma_pr_bruteforce(tree: &RootedTree) -> Result<usize, PdError> {
    let n = tree.len();
    if n < 2 {
        return Err(PdError::SingleVertex);
    }
    if n > MAX_BRUTEFORCE_ORDER {
        return Err(PdError::TooLarge { n, max: MAX_BRUTEFORCE_ORDER });
    }
    // Bit v - 1 stands for rank v.
    let mut adj = vec![0u32; n];
    for (p, c) in tree.edges() {
        adj[p - 1] |= 1 << (c - 1);
        adj[c - 1] |= 1 << (p - 1);
    }
    let closed: Vec<u32> = (0..n).map(|v| adj[v] | (1 << v)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    for k in (2..=n).step_by(2) {
        let mut set: u32 = (1u32 << k) - 1;
        while set <= full {
            if dominates(set, &closed, full) && forest_has_perfect_matching(set, &adj) {
                return Ok(k);
            }
            set = next_combination(set);
        }
    }
    unreachable!("every tree of order >= 2 has a paired dominating set")
}

fn dominates(set: u32, closed: &[u32], full: u32) -> bool {
    let mut covered = 0u32;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        covered |= closed[v];
        rest &= rest - 1;
    }
    covered == full
}

// The induced subgraph of a tree is a forest, so a leaf must be matched to
// its only neighbour; peel until empty or stuck on an isolated vertex.
fn forest_has_perfect_matching(set: u32, adj: &[u32]) -> bool {
    let mut remaining = set;
    'peel: while remaining != 0 {
        let mut scan = remaining;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let nbrs = adj[v] & remaining;
            match nbrs.count_ones() {
                0 => return false,
                1 => {
                    remaining &= !(nbrs | (1 << v));
                    continue 'peel;
                }
                _ => {}
            }
        }
        unreachable!("a nonempty forest has a vertex of degree at most one");
    }
    true
}

// Gosper's hack: next larger integer with the same popcount.
fn next_combination(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}
