//! Sampled check of generalized convexity:
//! f(λx₁ + (1−λ)x₂) ≤ λ^α f(x₁) + (1−λ)^α f(x₂).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lf_funcs::{GeneralizedFunction, Interval};
use crate::special::Alpha;

pub const DEFAULT_GRID: usize = 65;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x1: f64,
    pub x2: f64,
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub passed: bool,
    pub witness: Option<Witness>,
    /// Triples examined up to and including the witness.
    pub samples_used: usize,
}

pub fn check_generalized_convex(
    f: &GeneralizedFunction,
    iv: Interval,
    alpha: Alpha,
    grid_n: usize,
    tol: f64,
) -> Result<ConvexityReport> {
    check_convex_with(|x| f.eval(x, alpha), iv, alpha, grid_n, tol)
}

/// Same scan for an arbitrary evaluator. Triples are visited in
/// lexicographic (x₁ index, x₂ index, λ index) order and the first violation
/// in that order is the witness, whether or not rows run in parallel.
pub fn check_convex_with<F>(f: F, iv: Interval, alpha: Alpha, grid_n: usize, tol: f64) -> Result<ConvexityReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if grid_n < 3 {
        return Err(Error::Unsupported(format!("convexity grid needs at least 3 points, got {grid_n}")));
    }
    let n = grid_n;
    let step = iv.length() / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { iv.b() } else { iv.a() + i as f64 * step }).collect();
    let fx = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let a = alpha.get();
    let weights: Vec<(f64, f64, f64)> = (1..n)
        .map(|j| {
            let lambda = j as f64 / n as f64;
            (lambda, lambda.powf(a), (1.0 - lambda).powf(a))
        })
        .collect();

    let row = |i1: usize| -> Result<Option<(usize, Witness)>> {
        for i2 in 0..n {
            for (j, &(lambda, wl, wr)) in weights.iter().enumerate() {
                let x = (lambda * xs[i1] + (1.0 - lambda) * xs[i2]).clamp(iv.a(), iv.b());
                let lhs = f(x)?;
                let rhs = wl * fx[i1] + wr * fx[i2];
                if lhs > rhs + tol {
                    let w = Witness { x1: xs[i1], x2: xs[i2], lambda, lhs, rhs };
                    return Ok(Some((i2 * weights.len() + j, w)));
                }
            }
        }
        Ok(None)
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<Result<Option<(usize, Witness)>>> = (0..n).into_par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Result<Option<(usize, Witness)>>> = (0..n).map(row).collect();

    let per_row = n * weights.len();
    for (i1, r) in rows.into_iter().enumerate() {
        if let Some((offset, w)) = r? {
            return Ok(ConvexityReport { passed: false, witness: Some(w), samples_used: i1 * per_row + offset + 1 });
        }
    }
    Ok(ConvexityReport { passed: true, witness: None, samples_used: n * per_row })
}
