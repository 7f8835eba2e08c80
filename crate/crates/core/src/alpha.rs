//! Real embedding of the α-type number set: a^α is represented by the odd
//! extension sign(a)·|a|^α.
//!
//! The embedding keeps ordinary real addition, so products obey
//! a^α·b^α = (ab)^α exactly while a^α + b^α = (a+b)^α does not hold for
//! α < 1 (1^α + 1^α = 2 ≠ 2^α).

use std::ops::Mul;

use crate::special::Alpha;

/// sign(x)·|x|^α, with 0 ↦ 0.
#[inline]
pub fn signed_pow(x: f64, alpha: Alpha) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(alpha.get())
    }
}

/// The k-th power of the α-type element x^α, i.e. (signed_pow(x, α))^k.
///
/// k = 0 gives 1 for every x. At α = 1 this is the classical x^k.
#[inline]
pub fn alpha_pow(x: f64, k: u32, alpha: Alpha) -> f64 {
    match k {
        0 => 1.0,
        1 => signed_pow(x, alpha),
        _ => {
            let mag = x.abs().powf(alpha.get() * f64::from(k));
            if x < 0.0 && k % 2 == 1 {
                -mag
            } else if x == 0.0 {
                0.0
            } else {
                mag
            }
        }
    }
}

/// An element a^α of the α-type set together with its base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedAlphaValue {
    base: f64,
    value: f64,
    alpha: Alpha,
}

impl SignedAlphaValue {
    pub fn new(base: f64, alpha: Alpha) -> Self {
        SignedAlphaValue { base, value: signed_pow(base, alpha), alpha }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }
}

impl Mul for SignedAlphaValue {
    type Output = SignedAlphaValue;

    /// a^α·b^α = (ab)^α. Panics if the orders differ.
    fn mul(self, rhs: SignedAlphaValue) -> SignedAlphaValue {
        assert_eq!(self.alpha, rhs.alpha, "multiplying elements of different alpha-type sets");
        SignedAlphaValue { base: self.base * rhs.base, value: self.value * rhs.value, alpha: self.alpha }
    }
}
