//! Gamma function, Gamma-ratio chains and the one-parameter Mittag-Leffler
//! function.
//!
//! Every constant produced by the verifiers is a product of ratios
//! Γ(1+jα)/Γ(1+kα); these are evaluated directly for small arguments and in
//! log space otherwise so long chains never overflow.


use crate::error::{Error, Result};

/// Fractal order α ∈ (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

/// Arguments above this are never passed through raw Γ values.
const DIRECT_GAMMA_LIMIT: f64 = 30.0;

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::GammaDomain(x));
    }
    Ok(libm::lgamma(x))
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::GammaDomain(x));
    }
    Ok(libm::tgamma(x))
}

/// Γ(x)/Γ(y) for x, y > 0.
pub fn gamma_quotient(x: f64, y: f64) -> Result<f64> {
    if x == y {
        gamma(x)?;
        return Ok(1.0);
    }
    if x <= DIRECT_GAMMA_LIMIT && y <= DIRECT_GAMMA_LIMIT {
        Ok(gamma(x)? / gamma(y)?)
    } else {
        Ok((ln_gamma(x)? - ln_gamma(y)?).exp())
    }
}

/// Γ(1+jα)/Γ(1+kα).
pub fn gamma_ratio(j: u32, k: u32, alpha: Alpha) -> f64 {
    if j == k {
        return 1.0;
    }
    let a = alpha.get();
    // both arguments are >= 1, so the quotient is always defined
    gamma_quotient(1.0 + f64::from(j) * a, 1.0 + f64::from(k) * a)
        .expect("gamma arguments of the form 1 + k*alpha are positive")
}

/// Hard cap on the number of series terms.
pub const MITTAG_LEFFLER_MAX_TERMS: usize = 10_000;

/// E_α(z) = Σ z^k / Γ(1+kα).
///
/// `z` is the already-powered argument (pass `signed_pow(x, α)` for
/// E_α(x^α)). Summation stops once the next term drops below
/// `tol·|sum|` (or below `tol` when the sum is near zero) and terms have
/// started to decrease.
pub fn mittag_leffler(alpha: Alpha, z: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Unsupported(format!("tolerance must be positive, got {tol}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let a = alpha.get();
    let ln_abs_z = z.abs().ln();
    let term = |k: usize| -> Result<f64> {
        let kf = k as f64;
        let mag = (kf * ln_abs_z - ln_gamma(1.0 + kf * a)?).exp();
        Ok(if z < 0.0 && k % 2 == 1 { -mag } else { mag })
    };

    let mut sum: f64 = 1.0;
    let mut prev = 1.0_f64;
    for k in 1..MITTAG_LEFFLER_MAX_TERMS {
        let t = term(k)?;
        let threshold = if sum.abs() > f64::MIN_POSITIVE.sqrt() { tol * sum.abs() } else { tol };
        if t.abs() < threshold && t.abs() <= prev.abs() {
            return Ok(sum);
        }
        sum += t;
        prev = t;
    }
    Err(Error::NonConvergence { terms: MITTAG_LEFFLER_MAX_TERMS })
}
