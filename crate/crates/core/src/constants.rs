//! Root-label probabilities of the unconditioned Galton-Watson tree and the
//! limiting mean of the paired domination number.
//!
//! With `g` the offspring pgf, `x = (x_B, x_F, x_R, x_P)` is the fixed point of
//!
//! ```text
//! x_B = g(x_F)
//! x_F = g(x_F + x_P) - g(x_F)
//! x_R = g(x_B + x_F + x_P) - g(x_F + x_P)
//! x_P = 1 - g(x_B + x_F + x_P)
//! ```
//!
//! and the paired domination number of the conditioned tree grows like
//! `2 * x_R * n`.

use thiserror::Error;

use crate::gw_sampler::OffspringDistribution;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstantsError {
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("pgf argument {0} outside [0, 1]")]
    DomainError(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConstants {
    pub x_b: f64,
    pub x_f: f64,
    pub x_r: f64,
    pub x_p: f64,
    pub mu_pr: f64,
    /// Sup-norm of `map(x) - x` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

impl LimitConstants {
    pub fn as_array(&self) -> [f64; 4] {
        [self.x_b, self.x_f, self.x_r, self.x_p]
    }
}

/// `g(x)` for `x` in `[0, 1]`.
pub fn evaluate_pgf(dist: &OffspringDistribution, x: f64) -> Result<f64, ConstantsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ConstantsError::DomainError(x));
    }
    Ok(dist.pgf(x))
}

/// One application of the fixed-point map to `[x_B, x_F, x_R, x_P]`.
pub fn label_map(dist: &OffspringDistribution, x: [f64; 4]) -> [f64; 4] {
    let [xb, xf, _, xp] = x;
    let clamp = |v: f64| v.clamp(0.0, 1.0);
    let g_f = dist.pgf(clamp(xf));
    let g_fp = dist.pgf(clamp(xf + xp));
    let g_bfp = dist.pgf(clamp(xb + xf + xp));
    [g_f, g_fp - g_f, g_bfp - g_fp, 1.0 - g_bfp]
}

fn sup_dist(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

/// Damped fixed-point iteration `x <- (x + map(x)) / 2` from the centre of
/// the simplex, stopped once the defect `|map(x) - x|` is at most `tol`.
pub fn solve_system(dist: &OffspringDistribution, tol: f64, max_iter: usize) -> Result<LimitConstants, ConstantsError> {
    solve_system_from(dist, [0.25; 4], tol, max_iter)
}

pub fn solve_system_from(
    dist: &OffspringDistribution,
    start: [f64; 4],
    tol: f64,
    max_iter: usize,
) -> Result<LimitConstants, ConstantsError> {
    let trace = iterate(dist, start, tol, max_iter)?;
    Ok(trace.constants)
}

/// Result plus the defect after every iteration.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub constants: LimitConstants,
    pub residuals: Vec<f64>,
}

pub fn iterate(dist: &OffspringDistribution, start: [f64; 4], tol: f64, max_iter: usize) -> Result<SolveTrace, ConstantsError> {
    if !(tol > 0.0) {
        return Err(ConstantsError::BadTolerance(tol));
    }
    let mut x = start;
    let mut residuals = Vec::new();
    let mut image = label_map(dist, x);
    let mut residual = sup_dist(image, x);
    let mut iterations = 0;
    while residual > tol {
        if iterations == max_iter {
            return Err(ConstantsError::NoConvergence { iterations, residual });
        }
        for k in 0..4 {
            x[k] = 0.5 * x[k] + 0.5 * image[k];
        }
        iterations += 1;
        image = label_map(dist, x);
        residual = sup_dist(image, x);
        residuals.push(residual);
    }
    let constants = LimitConstants {
        x_b: x[0],
        x_f: x[1],
        x_r: x[2],
        x_p: x[3],
        mu_pr: 2.0 * x[2],
        residual,
        iterations,
    };
    Ok(SolveTrace { constants, residuals })
}
