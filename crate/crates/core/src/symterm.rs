//! Closed term algebra for products of two linear-argument α-powers.
//!
//! A [`PowTerm`] is `c·(A₁t+B₁)^(pα)·(A₂t+B₂)^(qα)`. The class is closed
//! under the α-derivative (power rule, product rule, linear chain rule) and
//! under the fractal integration-by-parts reduction, so every primitive is a
//! finite list of terms and every integral is an exact closed form.
//!
//! The operational calculus on the real embedding is representation
//! dependent (the product rule and the power rule disagree on `t^α·t^α`), so
//! terms are brought to a canonical form before differentiation or
//! integration: constant bases are folded into the coefficient and identical
//! or proportional bases are merged.

use crate::alpha::{alpha_pow, signed_pow};
use crate::error::{Error, Result};
use crate::special::{gamma_ratio, Alpha};

/// Maximum combined exponent p + q accepted by the by-parts reduction.
pub const MAX_TOTAL_EXPONENT: u32 = 24;

/// The linear form `slope·t + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinForm {
    pub slope: f64,
    pub intercept: f64,
}

impl LinForm {
    /// `t`
    pub const IDENTITY: LinForm = LinForm { slope: 1.0, intercept: 0.0 };
    /// the constant `1`
    pub const ONE: LinForm = LinForm { slope: 0.0, intercept: 1.0 };

    pub const fn new(slope: f64, intercept: f64) -> Self {
        LinForm { slope, intercept }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.slope * t + self.intercept
    }

    pub fn is_constant(&self) -> bool {
        self.slope == 0.0
    }

    pub fn root(&self) -> Option<f64> {
        (self.slope != 0.0).then(|| -self.intercept / self.slope)
    }

    pub fn negate(&self) -> LinForm {
        LinForm { slope: -self.slope, intercept: -self.intercept }
    }

    /// `Some(r)` when `other = r·self` (both non-constant).
    fn ratio_to(&self, other: &LinForm) -> Option<f64> {
        if self.slope == 0.0 || other.slope == 0.0 {
            return None;
        }
        if self.slope * other.intercept != other.slope * self.intercept {
            return None;
        }
        Some(other.slope / self.slope)
    }

    /// True if the form vanishes strictly between `lo` and `hi`.
    fn changes_sign_within(&self, lo: f64, hi: f64) -> Option<f64> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        self.root().filter(|r| *r > lo && *r < hi)
    }
}

/// One factor `base^(exp·α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub base: LinForm,
    pub exp: u32,
}

impl Factor {
    pub const UNIT: Factor = Factor { base: LinForm::ONE, exp: 0 };

    pub const fn new(base: LinForm, exp: u32) -> Self {
        Factor { base, exp }
    }

    #[inline]
    fn eval(&self, t: f64, alpha: Alpha) -> f64 {
        alpha_pow(self.base.eval(t), self.exp, alpha)
    }

    pub fn is_unit(&self) -> bool {
        self.exp == 0 && self.base.is_constant()
    }
}

/// `coeff·first·second`.
///
/// A first factor with exponent 0 but a non-constant base still matters: it
/// is the base in which the primitive of the constant is written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowTerm {
    pub coeff: f64,
    pub first: Factor,
    pub second: Factor,
}

impl PowTerm {
    pub const fn constant(coeff: f64) -> Self {
        PowTerm { coeff, first: Factor::UNIT, second: Factor::UNIT }
    }

    pub const fn single(coeff: f64, base: LinForm, k: u32) -> Self {
        PowTerm { coeff, first: Factor::new(base, k), second: Factor::UNIT }
    }

    pub const fn product(coeff: f64, first: LinForm, p: u32, second: LinForm, q: u32) -> Self {
        PowTerm { coeff, first: Factor::new(first, p), second: Factor::new(second, q) }
    }

    /// Pointwise value `c·(A₁t+B₁)^(pα)·(A₂t+B₂)^(qα)`.
    pub fn eval(&self, t: f64, alpha: Alpha) -> f64 {
        self.coeff * self.first.eval(t, alpha) * self.second.eval(t, alpha)
    }

    pub fn scaled(&self, by: f64) -> PowTerm {
        PowTerm { coeff: self.coeff * by, ..*self }
    }

    /// Product of two terms; at most two distinct non-constant bases may
    /// remain. Exponent-0 bases are dropped.
    pub fn mul(&self, other: &PowTerm, alpha: Alpha) -> Result<PowTerm> {
        let mut coeff = self.coeff * other.coeff;
        let mut factors: Vec<Factor> = Vec::with_capacity(2);
        for f in [self.first, self.second, other.first, other.second] {
            if f.exp == 0 {
                continue;
            }
            if f.base.is_constant() {
                coeff *= alpha_pow(f.base.intercept, f.exp, alpha);
                continue;
            }
            match factors.iter_mut().find(|g| g.base == f.base) {
                Some(g) => g.exp += f.exp,
                None => factors.push(f),
            }
        }
        match factors.as_slice() {
            [] => Ok(PowTerm::constant(coeff)),
            [a] => Ok(PowTerm { coeff, first: *a, second: Factor::UNIT }),
            [a, b] => Ok(PowTerm { coeff, first: *a, second: *b }),
            _ => Err(Error::TooManyBases),
        }
    }

    /// Canonical form: constant bases folded into the coefficient, identical
    /// or proportional bases merged into the first factor.
    pub fn canonical(&self, alpha: Alpha) -> PowTerm {
        let mut coeff = self.coeff;
        let mut first = self.first;
        let mut second = self.second;

        if second.base.is_constant() {
            coeff *= alpha_pow(second.base.intercept, second.exp, alpha);
            second = Factor::UNIT;
        }
        if first.base.is_constant() {
            coeff *= alpha_pow(first.base.intercept, first.exp, alpha);
            first = second;
            second = Factor::UNIT;
        }
        if second.exp == 0 {
            second = Factor::UNIT;
        }
        if !second.is_unit() {
            if let Some(r) = first.base.ratio_to(&second.base) {
                coeff *= alpha_pow(r, second.exp, alpha);
                first.exp += second.exp;
                second = Factor::UNIT;
            }
        }
        PowTerm { coeff, first, second }
    }

    /// α-derivative by the power rule
    /// D^α[(At+B)^(kα)] = Γ(1+kα)/Γ(1+(k−1)α)·A^α·(At+B)^((k−1)α),
    /// combined across the two factors with the product rule.
    pub fn alpha_derivative(&self, alpha: Alpha) -> Vec<PowTerm> {
        let t = self.canonical(alpha);
        let mut out = Vec::with_capacity(2);
        for (which, f) in [(0, t.first), (1, t.second)] {
            if f.exp == 0 || f.base.is_constant() {
                continue;
            }
            let c = t.coeff * gamma_ratio(f.exp, f.exp - 1, alpha) * signed_pow(f.base.slope, alpha);
            let lowered = Factor::new(f.base, f.exp - 1);
            let term = if which == 0 {
                PowTerm { coeff: c, first: lowered, second: t.second }
            } else {
                PowTerm { coeff: c, first: t.first, second: lowered }
            };
            out.push(term);
        }
        out
    }

    /// Closed-form primitive (a list of terms whose α-derivative is `self`),
    /// built by repeated integration by parts that lowers the second
    /// factor's exponent until a single power remains.
    pub fn antiderivative(&self, alpha: Alpha) -> Result<Vec<PowTerm>> {
        let t = self.canonical(alpha);
        let total = t.first.exp + t.second.exp;
        if total > MAX_TOTAL_EXPONENT {
            return Err(Error::DepthExceeded(total));
        }
        let mut out = Vec::with_capacity(t.second.exp as usize + 1);
        let (b1, b2) = (t.first.base, t.second.base);
        let (mut p, mut q) = (t.first.exp, t.second.exp);
        let mut coeff = t.coeff;
        while q > 0 {
            // u = b2^q, dv = b1^p (dt)^α, v = g·b1^(p+1)
            let g = gamma_ratio(p, p + 1, alpha) / signed_pow(b1.slope, alpha);
            out.push(PowTerm::product(coeff * g, b1, p + 1, b2, q));
            coeff = -coeff * g * gamma_ratio(q, q - 1, alpha) * signed_pow(b2.slope, alpha);
            p += 1;
            q -= 1;
        }
        out.push(antiderivative_single(b1, p, coeff, alpha)?);
        Ok(out)
    }

    fn check_sign_constant(&self, lo: f64, hi: f64) -> Result<()> {
        for f in [self.first, self.second] {
            if f.is_unit() {
                continue;
            }
            if let Some(root) = f.base.changes_sign_within(lo, hi) {
                return Err(Error::SignChange { root, lo, hi });
            }
        }
        Ok(())
    }
}

/// Primitive of `coeff·(At+B)^(kα)`:
/// `coeff·Γ(1+kα)/Γ(1+(k+1)α)/A^α·(At+B)^((k+1)α)`.
///
/// For a zero slope only `k = 0` is accepted and the primitive of the
/// constant is `coeff·t^α/Γ(1+α)`.
pub fn antiderivative_single(base: LinForm, k: u32, coeff: f64, alpha: Alpha) -> Result<PowTerm> {
    if base.is_constant() {
        if k > 0 {
            return Err(Error::DegenerateBase { k });
        }
        return Ok(PowTerm::single(coeff * gamma_ratio(0, 1, alpha), LinForm::IDENTITY, 1));
    }
    let c = coeff * gamma_ratio(k, k + 1, alpha) / signed_pow(base.slope, alpha);
    Ok(PowTerm::single(c, base, k + 1))
}

/// Sum of term values.
pub fn eval_terms(terms: &[PowTerm], t: f64, alpha: Alpha) -> f64 {
    terms.iter().map(|term| term.eval(t, alpha)).sum()
}

/// (1/Γ(1+α))∫_lo^hi term (dt)^α by closed-form reduction. Every base must
/// keep a constant sign on the interval.
pub fn integrate_two_form(term: &PowTerm, lo: f64, hi: f64, alpha: Alpha) -> Result<f64> {
    let t = term.canonical(alpha);
    t.check_sign_constant(lo, hi)?;
    if lo == hi || t.coeff == 0.0 {
        return Ok(0.0);
    }
    let primitive = t.antiderivative(alpha)?;
    Ok(eval_terms(&primitive, hi, alpha) - eval_terms(&primitive, lo, alpha))
}

/// Integral of a sum of terms over one interval.
pub fn integrate_terms(terms: &[PowTerm], lo: f64, hi: f64, alpha: Alpha) -> Result<f64> {
    terms.iter().map(|t| integrate_two_form(t, lo, hi, alpha)).sum()
}

/// Term lists on consecutive intervals `[t₀,t₁], …, [t_{m−1}, t_m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTermList {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<PowTerm>>,
}

impl PiecewiseTermList {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<PowTerm>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidPieces("need at least two breakpoints".into()));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidPieces(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPieces("breakpoints must be finite and strictly increasing".into()));
        }
        for (w, terms) in breakpoints.windows(2).zip(&pieces) {
            for term in terms {
                term.check_sign_constant(w[0], w[1])?;
            }
        }
        Ok(PiecewiseTermList { breakpoints, pieces })
    }

    /// `|c·(At+B)^(kα)|` on `[lo, hi]`, split at the root of the base.
    pub fn abs_power(coeff: f64, base: LinForm, k: u32, lo: f64, hi: f64) -> Result<Self> {
        let oriented = |l: f64, r: f64| {
            let mid = base.eval(0.5 * (l + r));
            let b = if mid < 0.0 { base.negate() } else { base };
            vec![PowTerm::single(coeff.abs(), b, k)]
        };
        match base.root().filter(|r| *r > lo && *r < hi) {
            Some(r) => PiecewiseTermList::new(vec![lo, r, hi], vec![oriented(lo, r), oriented(r, hi)]),
            None => PiecewiseTermList::new(vec![lo, hi], vec![oriented(lo, hi)]),
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<PowTerm>] {
        &self.pieces
    }

    pub fn lo(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn hi(&self) -> f64 {
        *self.breakpoints.last().expect("at least two breakpoints")
    }

    /// Multiply every piece by `term` (placed as the second operand).
    pub fn mul_term(&self, term: &PowTerm, alpha: Alpha) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|terms| terms.iter().map(|t| t.mul(term, alpha)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PiecewiseTermList::new(self.breakpoints.clone(), pieces)
    }

    /// Value at `t`; pieces are closed on the left, the last one on both ends.
    pub fn eval(&self, t: f64, alpha: Alpha) -> Option<f64> {
        if t < self.lo() || t > self.hi() || t.is_nan() {
            return None;
        }
        let idx = self.breakpoints[1..].iter().position(|b| t < *b).unwrap_or(self.pieces.len() - 1);
        Some(eval_terms(&self.pieces[idx], t, alpha))
    }

    /// Integral over the whole support.
    pub fn integrate(&self, alpha: Alpha) -> Result<f64> {
        self.integrate_range(self.lo(), self.hi(), alpha)
    }

    /// Integral over `[lo, hi] ⊆ [t₀, t_m]`; reversed limits flip the sign.
    pub fn integrate_range(&self, lo: f64, hi: f64, alpha: Alpha) -> Result<f64> {
        if lo > hi {
            return Ok(-self.integrate_range(hi, lo, alpha)?);
        }
        if lo < self.lo() || hi > self.hi() {
            return Err(Error::Domain { x: if lo < self.lo() { lo } else { hi }, what: "piecewise term list".into() });
        }
        let mut total = 0.0;
        for (w, terms) in self.breakpoints.windows(2).zip(&self.pieces) {
            let (l, r) = (w[0].max(lo), w[1].min(hi));
            if l < r {
                total += integrate_terms(terms, l, r, alpha)?;
            }
        }
        Ok(total)
    }
}

/// Sum of the piece integrals.
pub fn integrate_piecewise(pw: &PiecewiseTermList, alpha: Alpha) -> Result<f64> {
    pw.integrate(alpha)
}
