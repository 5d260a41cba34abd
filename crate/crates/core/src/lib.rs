//! Paired domination in trees.
//!
//! A linear-time bottom-up algorithm for the paired domination number of a
//! rooted tree, with the B/F/R/P vertex labelling that makes the number an
//! additive tree functional, together with the tooling to study it on random
//! conditioned Galton-Watson trees: exact samplers, the fixed-point system
//! for the limiting mean, and a reproducible Monte-Carlo harness.

pub mod constants;
pub mod gw_sampler;
pub mod paired_dom;
pub mod sim_stats;
pub mod tree;

pub use constants::{solve_system, LimitConstants};
pub use gw_sampler::{Model, OffspringDistribution, SeededRng};
pub use paired_dom::{gamma_pr_bruteforce, gamma_pr_linear, label_recursive, PdResult, VertexLabel};
pub use sim_stats::{run_simulation, SimSummary};
pub use tree::{DegreeSequence, RootedTree, TreeError};
