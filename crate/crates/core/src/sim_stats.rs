//! Monte-Carlo study of the paired domination number of conditioned
//! Galton-Watson trees.
//!
//! Replicate `i` always draws its tree from stream `i` of the base seed, and
//! the per-replicate values are reduced in replicate order, so summaries are
//! bit-identical for any number of workers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use thiserror::Error;

use crate::gw_sampler::{sample_conditioned, OffspringDistribution, SamplerError, SeededRng};
use crate::paired_dom::{gamma_pr_linear, PdError};

pub const MIN_DIAGNOSTIC_REPS: u64 = 500;
pub const SKEWNESS_LIMIT: f64 = 0.15;
pub const EXCESS_KURTOSIS_LIMIT: f64 = 0.3;
pub const CHI_SQUARE_MIN_P: f64 = 0.001;
/// Paired domination numbers are even.
const LATTICE_STEP: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("simulation needs n >= 2 and reps >= 1 (got n = {n}, reps = {reps})")]
    BadParameters { n: usize, reps: u64 },
    #[error("diagnostics need at least {min} replicates, got {reps}")]
    InsufficientReps { reps: u64, min: u64 },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSummary {
    pub model: String,
    pub n: usize,
    pub reps: u64,
    pub seed: u64,
    pub mean_gamma: f64,
    /// Unbiased sample variance.
    pub var_gamma: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Exact paired domination number to count.
    pub histogram: BTreeMap<usize, u64>,
    pub mu_hat: f64,
    pub sigma_hat: f64,
}

impl SimSummary {
    /// Builds a summary from raw per-replicate values, in replicate order.
    pub fn from_values(model: &str, n: usize, seed: u64, values: &[usize]) -> SimSummary {
        let reps = values.len() as u64;
        let mut histogram = BTreeMap::new();
        for &v in values {
            *histogram.entry(v).or_insert(0u64) += 1;
        }
        let count = values.len() as f64;
        let mean = values.iter().map(|&v| v as f64).sum::<f64>() / count;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &v in values {
            let d = v as f64 - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        let var = if values.len() > 1 { m2 / (count - 1.0) } else { 0.0 };
        let (m2, m3, m4) = (m2 / count, m3 / count, m4 / count);
        let (skewness, excess_kurtosis) = if m2 > 0.0 {
            (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
        } else {
            (0.0, 0.0)
        };
        SimSummary {
            model: model.to_string(),
            n,
            reps,
            seed,
            mean_gamma: mean,
            var_gamma: var,
            skewness,
            excess_kurtosis,
            histogram,
            mu_hat: mean / n as f64,
            sigma_hat: (var / n as f64).sqrt(),
        }
    }

    /// `key=value` lines for every scalar field.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        writeln!(out, "model={}", self.model).unwrap();
        writeln!(out, "n={}", self.n).unwrap();
        writeln!(out, "reps={}", self.reps).unwrap();
        writeln!(out, "seed={}", self.seed).unwrap();
        writeln!(out, "mean_gamma={}", self.mean_gamma).unwrap();
        writeln!(out, "var_gamma={}", self.var_gamma).unwrap();
        writeln!(out, "skewness={}", self.skewness).unwrap();
        writeln!(out, "excess_kurtosis={}", self.excess_kurtosis).unwrap();
        writeln!(out, "mu_hat={}", self.mu_hat).unwrap();
        writeln!(out, "sigma_hat={}", self.sigma_hat).unwrap();
        out
    }

    /// Histogram CSV preceded by the summary scalars as `#` comment lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in self.to_key_values().lines() {
            writeln!(out, "# {line}").unwrap();
        }
        out.push_str("gamma_pr,count\n");
        for (g, c) in &self.histogram {
            writeln!(out, "{g},{c}").unwrap();
        }
        out
    }
}

/// Draws `reps` trees of order `n` and records their paired domination
/// numbers. `workers = 0` uses rayon's default thread count.
pub fn run_simulation(
    dist: &OffspringDistribution,
    n: usize,
    reps: u64,
    seed: u64,
    workers: usize,
) -> Result<SimSummary, SimError> {
    let values = simulate_values(dist, n, reps, seed, workers)?;
    Ok(SimSummary::from_values(dist.name(), n, seed, &values))
}

/// Per-replicate paired domination numbers, in replicate order.
pub fn simulate_values(
    dist: &OffspringDistribution,
    n: usize,
    reps: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<usize>, SimError> {
    if n < 2 || reps == 0 {
        return Err(SimError::BadParameters { n, reps });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::Pool(e.to_string()))?;
    pool.install(|| {
        (0..reps)
            .into_par_iter()
            .map(|rep| {
                let tree = sample_conditioned(dist, n, SeededRng::new(seed, rep))?;
                Ok(gamma_pr_linear(&tree)?.gamma_pr())
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityReport {
    pub abs_skewness: f64,
    pub abs_excess_kurtosis: f64,
    /// `None` when the sample has zero variance.
    pub chi_square: Option<ChiSquareDeciles>,
    pub degenerate: bool,
    pub skewness_ok: bool,
    pub kurtosis_ok: bool,
    pub chi_square_ok: bool,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        !self.degenerate && self.skewness_ok && self.kurtosis_ok && self.chi_square_ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareDeciles {
    /// Continuity-corrected (fractional) bin counts.
    pub observed: [f64; 10],
    pub statistic: f64,
    /// Ten bins minus one, minus the two estimated parameters.
    pub dof: u32,
    pub p_value: f64,
}

/// Moment and decile diagnostics of the standardized sample against N(0, 1).
/// The sample is standardized with its own mean and standard deviation.
pub fn normality_diagnostics(summary: &SimSummary) -> Result<NormalityReport, SimError> {
    if summary.reps < MIN_DIAGNOSTIC_REPS {
        return Err(SimError::InsufficientReps { reps: summary.reps, min: MIN_DIAGNOSTIC_REPS });
    }
    let abs_skewness = summary.skewness.abs();
    let abs_excess_kurtosis = summary.excess_kurtosis.abs();
    if summary.var_gamma <= 0.0 {
        return Ok(NormalityReport {
            abs_skewness,
            abs_excess_kurtosis,
            chi_square: None,
            degenerate: true,
            skewness_ok: false,
            kurtosis_ok: false,
            chi_square_ok: false,
        });
    }
    // Each value is spread uniformly over its lattice cell [g - 1, g + 1]
    // and its count split across decile cuts by overlap, which keeps whole
    // atoms from jumping between neighbouring bins.
    let spread_sd = (summary.var_gamma + LATTICE_STEP * LATTICE_STEP / 12.0).sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("valid normal");
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend((1..10).map(|k| std_normal.inverse_cdf(k as f64 / 10.0)));
    edges.push(f64::INFINITY);
    let mut observed = [0.0f64; 10];
    for (&g, &count) in &summary.histogram {
        let lo = (g as f64 - LATTICE_STEP / 2.0 - summary.mean_gamma) / spread_sd;
        let hi = (g as f64 + LATTICE_STEP / 2.0 - summary.mean_gamma) / spread_sd;
        for (bin, slot) in observed.iter_mut().enumerate() {
            let overlap = hi.min(edges[bin + 1]) - lo.max(edges[bin]);
            if overlap > 0.0 {
                *slot += count as f64 * overlap / (hi - lo);
            }
        }
    }
    let expected = summary.reps as f64 / 10.0;
    let statistic: f64 = observed.iter().map(|&o| (o - expected).powi(2) / expected).sum();
    let dof = 7;
    let p_value = 1.0 - ChiSquared::new(dof as f64).expect("positive dof").cdf(statistic);
    Ok(NormalityReport {
        abs_skewness,
        abs_excess_kurtosis,
        chi_square: Some(ChiSquareDeciles { observed, statistic, dof, p_value }),
        degenerate: false,
        skewness_ok: abs_skewness < SKEWNESS_LIMIT,
        kurtosis_ok: abs_excess_kurtosis < EXCESS_KURTOSIS_LIMIT,
        chi_square_ok: p_value > CHI_SQUARE_MIN_P,
    })
}
