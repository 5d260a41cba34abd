//! Critical offspring laws and exact samplers for conditioned
//! Galton-Watson trees.
//!
//! A conditioned tree of order `n` is drawn by producing `n` offspring counts
//! conditioned on summing to `n - 1`, rotating them with the cycle lemma into
//! the unique valid preorder word, and building the ordered tree. Because the
//! probability of a tree depends only on its outdegree multiset, and each
//! multiset arrangement is hit by exactly one rotation of each of its `n`
//! cyclic shifts, this gives the conditional law exactly.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::{cycle_lemma_rotation, DegreeSequence, RootedTree};

/// Tail mass below which infinite pmfs are cut off.
pub const TAIL_CUTOFF: f64 = 1e-15;
/// Tolerance on total mass and on the mean.
pub const CRITICAL_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_REJECTIONS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("invalid offspring distribution: {0}")]
    InvalidDistribution(String),
    #[error("no degree sequence summing to {target} after {rounds} rejection rounds")]
    RejectionTimeout { target: usize, rounds: u64 },
    #[error("tree order must be positive")]
    ZeroOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Bin(2, 1/2): uniform plane binary trees.
    Binary,
    /// Geo(1/2): uniform plane trees.
    Plane,
    /// Pois(1): uniform rooted labelled trees.
    Labelled,
    Custom,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Binary => "binary",
            Model::Plane => "plane",
            Model::Labelled => "labelled",
            Model::Custom => "custom",
        }
    }

    pub fn builtins() -> [Model; 3] {
        [Model::Binary, Model::Plane, Model::Labelled]
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = SamplerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(Model::Binary),
            "plane" => Ok(Model::Plane),
            "labelled" | "labeled" => Ok(Model::Labelled),
            "custom" => Ok(Model::Custom),
            other => Err(SamplerError::InvalidDistribution(format!("unknown model {other:?}"))),
        }
    }
}

/// A critical offspring law with finite positive variance.
#[derive(Debug, Clone)]
pub struct OffspringDistribution {
    model: Model,
    pmf: Vec<f64>,
    mean: f64,
    variance: f64,
    tail_mass: f64,
}

impl OffspringDistribution {
    pub fn builtin(model: Model) -> Option<Self> {
        match model {
            Model::Binary => Some(Self::binary()),
            Model::Plane => Some(Self::plane()),
            Model::Labelled => Some(Self::labelled()),
            Model::Custom => None,
        }
    }

    pub fn binary() -> Self {
        Self::from_parts(Model::Binary, vec![0.25, 0.5, 0.25], 0.0)
    }

    pub fn plane() -> Self {
        let mut pmf = vec![0.5];
        let mut tail = 0.5;
        while tail >= TAIL_CUTOFF {
            let next = pmf.last().unwrap() * 0.5;
            pmf.push(next);
            tail -= next;
        }
        Self::from_parts(Model::Plane, pmf, tail)
    }

    pub fn labelled() -> Self {
        let mut pmf = vec![(-1.0f64).exp()];
        let mut tail = 1.0 - pmf[0];
        let mut k = 0usize;
        while tail >= TAIL_CUTOFF {
            k += 1;
            let next = pmf[k - 1] / k as f64;
            pmf.push(next);
            tail -= next;
        }
        Self::from_parts(Model::Labelled, pmf, tail.max(0.0))
    }

    fn from_parts(model: Model, mut pmf: Vec<f64>, tail_mass: f64) -> Self {
        let total: f64 = pmf.iter().sum();
        for p in &mut pmf {
            *p /= total;
        }
        let (mean, variance) = moments(&pmf);
        OffspringDistribution { model, pmf, mean, variance, tail_mass }
    }

    /// Validates and wraps a user-supplied pmf (`pmf[k] = Pr(xi = k)`).
    pub fn custom(pmf: Vec<f64>) -> Result<Self, SamplerError> {
        let bad = |msg: String| Err(SamplerError::InvalidDistribution(msg));
        if pmf.is_empty() {
            return bad("empty pmf".into());
        }
        if let Some((k, p)) = pmf.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return bad(format!("p_{k} = {p} is not a probability"));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > CRITICAL_TOL {
            return bad(format!("probabilities sum to {total}"));
        }
        let (mean, _) = moments(&pmf);
        if (mean - 1.0).abs() > CRITICAL_TOL {
            return bad(format!("mean is {mean}, the law must be critical"));
        }
        if pmf[0] <= 0.0 {
            return bad("p_0 must be positive".into());
        }
        let support_gcd = pmf
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .fold(0usize, |g, (k, _)| gcd(g, k));
        if support_gcd != 1 {
            return bad(format!("support has gcd {support_gcd}"));
        }
        let mut pmf = pmf;
        while pmf.last() == Some(&0.0) {
            pmf.pop();
        }
        let dist = Self::from_parts(Model::Custom, pmf, 0.0);
        if dist.variance <= 0.0 {
            return bad("variance must be positive".into());
        }
        Ok(dist)
    }

    /// Parses lines `k p_k`; blank lines and `#` comments are skipped.
    pub fn parse_pmf(text: &str) -> Result<Self, SamplerError> {
        let mut pmf: Vec<f64> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = || SamplerError::InvalidDistribution(format!("line {}: expected `k p_k`", lineno + 1));
            if fields.len() != 2 {
                return Err(err());
            }
            let k: usize = fields[0].parse().map_err(|_| err())?;
            let p: f64 = fields[1].parse().map_err(|_| err())?;
            if pmf.len() <= k {
                pmf.resize(k + 1, 0.0);
            }
            pmf[k] += p;
        }
        Self::custom(pmf)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn name(&self) -> &'static str {
        self.model.name()
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.pmf.get(k).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Mass dropped when truncating an infinite support.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Smallest `d >= 2` with positive probability.
    pub fn d0(&self) -> Option<usize> {
        (2..self.pmf.len()).find(|&k| self.pmf[k] > 0.0)
    }

    /// Probability generating function, in closed form for the built-in
    /// laws and as a Horner-evaluated series otherwise.
    pub fn pgf(&self, x: f64) -> f64 {
        match self.model {
            Model::Binary => (1.0 + x) * (1.0 + x) / 4.0,
            Model::Plane => 1.0 / (2.0 - x),
            Model::Labelled => (x - 1.0).exp(),
            Model::Custom => self.pgf_series(x),
        }
    }

    /// `sum_k p_k x^k` over the stored (possibly truncated) pmf.
    pub fn pgf_series(&self, x: f64) -> f64 {
        self.pmf.iter().rev().fold(0.0, |acc, &p| acc * x + p)
    }

    /// Probability of a finite ordered tree under the unconditioned law.
    pub fn tree_weight(&self, degs: &DegreeSequence) -> f64 {
        degs.as_slice().iter().map(|&d| self.prob(d)).product()
    }
}

fn moments(pmf: &[f64]) -> (f64, f64) {
    let mean: f64 = pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    let second: f64 = pmf.iter().enumerate().map(|(k, p)| (k * k) as f64 * p).sum();
    (mean, second - mean * mean)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A reproducible random stream: one ChaCha8 stream per `(seed, stream_id)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededRng {
    pub seed: u64,
    pub stream_id: u64,
}

impl SeededRng {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        SeededRng { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Draws a conditioned Galton-Watson tree of order `n`.
///
/// The three built-in laws use exact closed-form conditional draws of the
/// offspring counts; custom laws use rejection on the total.
pub fn sample_conditioned(
    dist: &OffspringDistribution,
    n: usize,
    rng: SeededRng,
) -> Result<RootedTree, SamplerError> {
    let mut r = rng.rng();
    sample_conditioned_with(dist, n, &mut r, DEFAULT_MAX_REJECTIONS)
}

pub fn sample_conditioned_with<R: Rng + ?Sized>(
    dist: &OffspringDistribution,
    n: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<RootedTree, SamplerError> {
    if n == 0 {
        return Err(SamplerError::ZeroOrder);
    }
    if n == 1 {
        return Ok(RootedTree::single_vertex());
    }
    let counts = match dist.model {
        Model::Binary => binary_counts(n, rng),
        Model::Plane => plane_counts(n, rng),
        Model::Labelled => labelled_counts(n, rng),
        Model::Custom => rejection_counts(dist, n, rng, max_rejections)?,
    };
    Ok(tree_from_counts(counts))
}

/// Same law as [`sample_conditioned`], always via rejection on the total of
/// `n` i.i.d. draws. Used to cross-check the closed-form routes.
pub fn sample_conditioned_rejection<R: Rng + ?Sized>(
    dist: &OffspringDistribution,
    n: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<RootedTree, SamplerError> {
    if n == 0 {
        return Err(SamplerError::ZeroOrder);
    }
    if n == 1 {
        return Ok(RootedTree::single_vertex());
    }
    Ok(tree_from_counts(rejection_counts(dist, n, rng, max_rejections)?))
}

fn tree_from_counts(mut counts: Vec<usize>) -> RootedTree {
    let s = cycle_lemma_rotation(&counts);
    counts.rotate_left(s);
    let degs = DegreeSequence::new(counts).expect("cycle lemma yields a valid word");
    RootedTree::from_lukasiewicz(&degs)
}

fn rejection_counts<R: Rng + ?Sized>(
    dist: &OffspringDistribution,
    n: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<Vec<usize>, SamplerError> {
    let sampler = WeightedIndex::new(&dist.pmf).map_err(|e| SamplerError::InvalidDistribution(e.to_string()))?;
    let target = n - 1;
    let mut counts = vec![0usize; n];
    for _ in 0..max_rejections {
        let mut total = 0usize;
        for c in counts.iter_mut() {
            *c = sampler.sample(rng);
            total += *c;
        }
        if total == target {
            return Ok(counts);
        }
    }
    Err(SamplerError::RejectionTimeout { target, rounds: max_rejections })
}

// Pois(1)^n given the total n - 1 is multinomial: n - 1 balls in n boxes.
fn labelled_counts<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut counts = vec![0usize; n];
    for _ in 0..n - 1 {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts
}

// Geo(1/2)^n given the total n - 1 is uniform over weak compositions:
// a uniform arrangement of n - 1 balls and n - 1 separators.
fn plane_counts<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut slots = vec![false; 2 * n - 2];
    slots[..n - 1].fill(true);
    slots.shuffle(rng);
    let mut counts = Vec::with_capacity(n);
    let mut run = 0;
    for is_ball in slots {
        if is_ball {
            run += 1;
        } else {
            counts.push(run);
            run = 0;
        }
    }
    counts.push(run);
    counts
}

// Bin(2, 1/2)^n given the total n - 1: choose n - 1 of the 2n coin slots.
fn binary_counts<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut slots = vec![false; 2 * n];
    slots[..n - 1].fill(true);
    slots.shuffle(rng);
    slots.chunks(2).map(|pair| pair.iter().filter(|&&b| b).count()).collect()
}

/// Uniform labelled rooted tree: a uniform Pruefer sequence with a uniform
/// root, decoded and BFS-canonicalized.
pub fn sample_cayley_uniform(n: usize, rng: SeededRng) -> Result<RootedTree, SamplerError> {
    let mut r = rng.rng();
    sample_cayley_uniform_with(n, &mut r)
}

pub fn sample_cayley_uniform_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RootedTree, SamplerError> {
    match n {
        0 => Err(SamplerError::ZeroOrder),
        1 => Ok(RootedTree::single_vertex()),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            let root = rng.gen_range(1..=n);
            Ok(RootedTree::from_pruefer(&seq, root).expect("entries drawn in range"))
        }
    }
}

/// Grows an unconditioned Galton-Watson tree generation by generation.
/// Returns `None` if it would exceed `cap` vertices. Ranks come out in BFS
/// order.
pub fn sample_unconditioned<R: Rng + ?Sized>(
    dist: &OffspringDistribution,
    rng: &mut R,
    cap: usize,
) -> Result<Option<RootedTree>, SamplerError> {
    let sampler = WeightedIndex::new(&dist.pmf).map_err(|e| SamplerError::InvalidDistribution(e.to_string()))?;
    let mut parent = vec![0usize, 0];
    let mut next = 1;
    while next < parent.len() {
        let k = sampler.sample(rng);
        if parent.len() - 1 + k > cap {
            return Ok(None);
        }
        for _ in 0..k {
            parent.push(next);
        }
        next += 1;
    }
    Ok(Some(RootedTree::from_parent_array(&parent[1..]).expect("BFS growth yields a tree")))
}
