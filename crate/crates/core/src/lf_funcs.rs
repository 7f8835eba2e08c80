//! Generalized functions: α-polynomials, scaled Mittag-Leffler functions and
//! explicit piecewise term lists, with exact α-derivative and local
//! fractional integral.
//!
//! The local fractional integral is computed operationally, as the
//! difference of a closed-form α-primitive; for α < 1 a fractal Riemann sum
//! of an everywhere-supported integrand grows like N^(1−α) and has no
//! floating-point limit.

use std::fmt;
use std::str::FromStr;

use crate::alpha::signed_pow;
use crate::error::{Error, Result};
use crate::special::{gamma_ratio, mittag_leffler, Alpha};
use crate::symterm::{integrate_terms, LinForm, PiecewiseTermList, PowTerm};

pub const MAX_POLY_DEGREE: usize = 12;

/// Relative truncation tolerance for Mittag-Leffler evaluations.
const ML_TOL: f64 = 1e-16;

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0.0
    }
}

/// `f(x) = Σ c_k·x^(kα)`, k = 0..=n, n ≤ 12.
///
/// Unless `signed` is set, terms with k ≥ 1 are only evaluated for x ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaPoly {
    coeffs: Vec<f64>,
    signed: bool,
}

impl AlphaPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse { literal: String::new(), reason: "empty coefficient list".into() });
        }
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(Error::DegreeTooHigh(coeffs.len() - 1));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Parse { literal: format!("{c}"), reason: "non-finite coefficient".into() });
        }
        Ok(AlphaPoly { coeffs, signed: false })
    }

    /// `c·x^(kα)`
    pub fn monomial(k: usize, c: f64) -> Result<Self> {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        AlphaPoly::new(coeffs)
    }

    /// Evaluate x^(kα) on negative x with the odd-extension convention.
    pub fn with_signed_domain(mut self) -> Self {
        self.signed = true;
        self
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// Index of the highest nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    pub fn has_power_terms(&self) -> bool {
        self.coeffs.iter().skip(1).any(|c| *c != 0.0)
    }

    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    /// The same polynomial without its constant term.
    pub fn without_constant(&self) -> AlphaPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = 0.0;
        AlphaPoly { coeffs, signed: self.signed }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if !self.signed && x < 0.0 && self.has_power_terms() {
            return Err(Error::Domain { x, what: self.to_string() });
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, alpha: Alpha) -> Result<f64> {
        self.check_domain(x)?;
        // Horner in y = x^α; one powf per evaluation
        let y = signed_pow(x, alpha);
        Ok(self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c))
    }

    pub fn deriv_alpha(&self, alpha: Alpha) -> AlphaPoly {
        let coeffs = if self.coeffs.len() == 1 {
            vec![0.0]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * gamma_ratio(k as u32, k as u32 - 1, alpha))
                .collect()
        };
        AlphaPoly { coeffs, signed: self.signed }
    }

    /// Monomials as terms in x: constants use the unit base, powers the base x.
    pub fn terms(&self) -> Vec<PowTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| match k {
                0 => PowTerm::constant(*c),
                _ => PowTerm::single(*c, LinForm::IDENTITY, k as u32),
            })
            .collect()
    }

    pub fn lf_integral(&self, iv: Interval, alpha: Alpha) -> Result<f64> {
        self.check_domain(iv.a())?;
        integrate_terms(&self.terms(), iv.a(), iv.b(), alpha)
    }

    /// Substitute x = u·t + v: each c_k·x^(kα) becomes c_k·(ut+v)^(kα).
    /// The constant keeps the affine base (with exponent 0) so its primitive
    /// is taken in that base.
    pub fn compose_affine(&self, u: f64, v: f64) -> Vec<PowTerm> {
        let base = LinForm::new(u, v);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| PowTerm::single(*c, base, k as u32))
            .collect()
    }

    /// All coefficients ≥ 0, or all ≤ 0.
    pub fn is_sign_definite(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= 0.0) || self.coeffs.iter().all(|c| *c <= 0.0)
    }
}

/// `f(x) = coeff·E_α((scale·x)^α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MittagLefflerExp {
    pub scale: f64,
    pub coeff: f64,
}

impl MittagLefflerExp {
    pub fn new(scale: f64) -> Self {
        MittagLefflerExp { scale, coeff: 1.0 }
    }

    fn e_alpha(&self, x: f64, alpha: Alpha) -> Result<f64> {
        mittag_leffler(alpha, signed_pow(self.scale * x, alpha), ML_TOL)
    }

    pub fn eval(&self, x: f64, alpha: Alpha) -> Result<f64> {
        Ok(self.coeff * self.e_alpha(x, alpha)?)
    }

    /// D^α E_α((sx)^α) = s^α·E_α((sx)^α), termwise from the power rule.
    pub fn deriv_alpha(&self, alpha: Alpha) -> MittagLefflerExp {
        MittagLefflerExp { scale: self.scale, coeff: self.coeff * signed_pow(self.scale, alpha) }
    }

    /// Termwise power-rule integration telescopes to
    /// (E_α((sb)^α) − E_α((sa)^α))/s^α.
    pub fn lf_integral(&self, iv: Interval, alpha: Alpha) -> Result<f64> {
        if self.scale == 0.0 {
            return integrate_terms(&[PowTerm::constant(self.coeff)], iv.a(), iv.b(), alpha);
        }
        let diff = self.e_alpha(iv.b(), alpha)? - self.e_alpha(iv.a(), alpha)?;
        Ok(self.coeff * diff / signed_pow(self.scale, alpha))
    }
}

/// The f of the Hermite-Hadamard identities and bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneralizedFunction {
    AlphaPoly(AlphaPoly),
    MittagLeffler(MittagLefflerExp),
    Piecewise(PiecewiseTermList),
}

impl GeneralizedFunction {
    pub fn poly(coeffs: Vec<f64>) -> Result<Self> {
        Ok(GeneralizedFunction::AlphaPoly(AlphaPoly::new(coeffs)?))
    }

    pub fn mittag_leffler(scale: f64) -> Self {
        GeneralizedFunction::MittagLeffler(MittagLefflerExp::new(scale))
    }

    pub fn as_poly(&self) -> Option<&AlphaPoly> {
        match self {
            GeneralizedFunction::AlphaPoly(p) => Some(p),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64, alpha: Alpha) -> Result<f64> {
        match self {
            GeneralizedFunction::AlphaPoly(p) => p.eval(x, alpha),
            GeneralizedFunction::MittagLeffler(m) => m.eval(x, alpha),
            GeneralizedFunction::Piecewise(pw) => {
                pw.eval(x, alpha).ok_or_else(|| Error::Domain { x, what: "piecewise function".into() })
            }
        }
    }

    pub fn deriv_alpha(&self, alpha: Alpha) -> Result<GeneralizedFunction> {
        Ok(match self {
            GeneralizedFunction::AlphaPoly(p) => GeneralizedFunction::AlphaPoly(p.deriv_alpha(alpha)),
            GeneralizedFunction::MittagLeffler(m) => GeneralizedFunction::MittagLeffler(m.deriv_alpha(alpha)),
            GeneralizedFunction::Piecewise(pw) => {
                let pieces = pw
                    .pieces()
                    .iter()
                    .map(|terms| terms.iter().flat_map(|t| t.alpha_derivative(alpha)).collect())
                    .collect();
                GeneralizedFunction::Piecewise(PiecewiseTermList::new(pw.breakpoints().to_vec(), pieces)?)
            }
        })
    }

    /// `aI_b^(α) f = (1/Γ(1+α))∫_a^b f(x)(dx)^α`.
    pub fn lf_integral(&self, iv: Interval, alpha: Alpha) -> Result<f64> {
        match self {
            GeneralizedFunction::AlphaPoly(p) => p.lf_integral(iv, alpha),
            GeneralizedFunction::MittagLeffler(m) => m.lf_integral(iv, alpha),
            GeneralizedFunction::Piecewise(pw) => pw.integrate_range(iv.a(), iv.b(), alpha),
        }
    }

    pub fn compose_affine(&self, u: f64, v: f64) -> Result<Vec<PowTerm>> {
        match self {
            GeneralizedFunction::AlphaPoly(p) => Ok(p.compose_affine(u, v)),
            GeneralizedFunction::MittagLeffler(_) => {
                Err(Error::Unsupported("Mittag-Leffler composition leaves the closed term class".into()))
            }
            GeneralizedFunction::Piecewise(_) => {
                Err(Error::Unsupported("affine composition of piecewise functions".into()))
            }
        }
    }
}

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.signed { "spoly:" } else { "poly:" })?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GeneralizedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralizedFunction::AlphaPoly(p) => p.fmt(f),
            GeneralizedFunction::MittagLeffler(m) if m.coeff == 1.0 => write!(f, "ml:{}", m.scale),
            GeneralizedFunction::MittagLeffler(m) => write!(f, "{}*ml:{}", m.coeff, m.scale),
            GeneralizedFunction::Piecewise(pw) => write!(f, "piecewise[{} pieces]", pw.pieces().len()),
        }
    }
}

fn parse_number(literal: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse { literal: literal.to_string(), reason: format!("bad number {s:?}") })?;
    if !v.is_finite() {
        return Err(Error::Parse { literal: literal.to_string(), reason: format!("non-finite number {s:?}") });
    }
    Ok(v)
}

/// `poly:c0,c1,...,cn`, `spoly:...` (signed domain) or `ml:s`.
impl FromStr for GeneralizedFunction {
    type Err = Error;

    fn from_str(literal: &str) -> Result<Self> {
        let literal = literal.trim();
        let (kind, body) = literal.split_once(':').ok_or_else(|| Error::Parse {
            literal: literal.to_string(),
            reason: "expected `poly:`, `spoly:` or `ml:` prefix".into(),
        })?;
        match kind {
            "poly" | "spoly" => {
                let coeffs = body.split(',').map(|s| parse_number(literal, s)).collect::<Result<Vec<_>>>()?;
                let p = AlphaPoly::new(coeffs).map_err(|e| match e {
                    Error::Parse { reason, .. } => Error::Parse { literal: literal.to_string(), reason },
                    other => other,
                })?;
                Ok(GeneralizedFunction::AlphaPoly(if kind == "spoly" { p.with_signed_domain() } else { p }))
            }
            "ml" => Ok(GeneralizedFunction::mittag_leffler(parse_number(literal, body)?)),
            _ => Err(Error::Parse { literal: literal.to_string(), reason: format!("unknown function kind {kind:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symterm::eval_terms;
    use proptest::prelude::*;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn poly(c: &[f64]) -> GeneralizedFunction {
        GeneralizedFunction::poly(c.to_vec()).unwrap()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert_eq!(iv(1.0, 3.0).midpoint(), 2.0);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[0.0, 0.0, 1.0]).eval(3.0, Alpha::ONE).unwrap(), 9.0);
        assert_eq!(GeneralizedFunction::mittag_leffler(1.0).eval(0.0, a(0.4)).unwrap(), 1.0);
        assert!((poly(&[0.0, 0.0, 1.0]).eval(4.0, a(0.5)).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(poly(&[0.0, 1.0]).eval(-1.0, a(0.5)), Err(Error::Domain { .. })));
        assert_eq!(poly(&[2.0]).eval(-1.0, a(0.5)).unwrap(), 2.0);
        let signed = GeneralizedFunction::AlphaPoly(AlphaPoly::new(vec![0.0, 1.0]).unwrap().with_signed_domain());
        assert!((signed.eval(-4.0, a(0.5)).unwrap() + 2.0).abs() < 1e-15);
        assert!(poly(&[0.0, 1.0]).lf_integral(iv(-1.0, 1.0), a(0.5)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let al = a(0.3);
        let d = poly(&[0.0, 0.0, 1.0]).deriv_alpha(al).unwrap();
        assert_eq!(d.as_poly().unwrap().coeffs(), &[0.0, gamma_ratio(2, 1, al)]);
        let d1 = poly(&[0.0, 0.0, 1.0]).deriv_alpha(Alpha::ONE).unwrap();
        assert_eq!(d1.as_poly().unwrap().coeffs(), &[0.0, 2.0]);
        let dc = poly(&[7.0]).deriv_alpha(al).unwrap();
        assert_eq!(dc.as_poly().unwrap().coeffs(), &[0.0]);

        let ml = GeneralizedFunction::mittag_leffler(1.0);
        assert_eq!(ml.deriv_alpha(al).unwrap(), ml);
    }

    #[test]
    fn integral_examples() {
        let al = a(0.65);
        let v = poly(&[0.0, 1.0]).lf_integral(iv(0.0, 1.0), al).unwrap();
        assert!((v - gamma_ratio(1, 2, al)).abs() < 1e-15);
        assert!((poly(&[0.0, 1.0]).lf_integral(iv(0.0, 1.0), Alpha::ONE).unwrap() - 0.5).abs() < 1e-15);
        // Lemma-type closed form for the constant: (b^α − a^α)/Γ(1+α)
        let c = poly(&[3.0]).lf_integral(iv(1.0, 4.0), al).unwrap();
        let expected = 3.0 * (4f64.powf(0.65) - 1.0) * gamma_ratio(0, 1, al);
        assert!((c - expected).abs() < 1e-14);
    }

    #[test]
    fn mittag_leffler_integral_telescopes() {
        for al in [0.3, 0.5, 1.0] {
            let al = a(al);
            let v = GeneralizedFunction::mittag_leffler(1.0).lf_integral(iv(0.0, 1.0), al).unwrap();
            let e1 = mittag_leffler(al, 1.0, 1e-16).unwrap();
            assert!((v - (e1 - 1.0)).abs() < 1e-13);
        }
        let e = GeneralizedFunction::mittag_leffler(1.0).lf_integral(iv(0.0, 1.0), Alpha::ONE).unwrap();
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-14);
        // scaled: ∫_0^1 e^{2x} dx = (e² − 1)/2
        let s = GeneralizedFunction::mittag_leffler(2.0).lf_integral(iv(0.0, 1.0), Alpha::ONE).unwrap();
        assert!((s - (2f64.exp() - 1.0) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn compose_affine_examples() {
        let al = a(0.5);
        let terms = poly(&[0.0, 0.0, 1.0]).compose_affine(-1.0, 1.0).unwrap();
        assert_eq!(terms, vec![PowTerm::single(1.0, LinForm::new(-1.0, 1.0), 2)]);
        let c = poly(&[5.0]).compose_affine(2.0, -7.0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].eval(0.3, al), 5.0);
        assert!(GeneralizedFunction::mittag_leffler(1.0).compose_affine(1.0, 0.0).is_err());

        let f = poly(&[0.0, 1.0, 1.0]);
        let composed = f.compose_affine(1.0 - 3.0, 3.0).unwrap();
        assert_eq!(composed.len(), 2);
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            let x = -2.0 * t + 3.0;
            assert!((eval_terms(&composed, t, al) - f.eval(x, al).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn parsing_and_display() {
        let f: GeneralizedFunction = "poly:0,0,1".parse().unwrap();
        assert_eq!(f, poly(&[0.0, 0.0, 1.0]));
        assert_eq!(f.to_string(), "poly:0,0,1");
        let g: GeneralizedFunction = " poly: 0.1, 2.5e-1 ".parse().unwrap();
        assert_eq!(g.as_poly().unwrap().coeffs(), &[0.1, 0.25]);
        assert_eq!(g.to_string(), "poly:0.1,0.25");
        let m: GeneralizedFunction = "ml:1.5".parse().unwrap();
        assert_eq!(m, GeneralizedFunction::mittag_leffler(1.5));
        assert_eq!(m.to_string(), "ml:1.5");
        let s: GeneralizedFunction = "spoly:1,2".parse().unwrap();
        assert!(s.as_poly().unwrap().is_signed());
        assert_eq!(s.to_string(), "spoly:1,2");

        for bad in ["", "poly", "poly:", "poly:1,,2", "poly:nan", "ml:x", "exp:1", "poly:1,inf"] {
            assert!(bad.parse::<GeneralizedFunction>().is_err(), "{bad:?}");
        }
        let too_long = format!("poly:{}", vec!["1"; 14].join(","));
        assert_eq!(too_long.parse::<GeneralizedFunction>(), Err(Error::DegreeTooHigh(13)));
    }

    #[test]
    fn parsing_is_bit_exact() {
        let f: GeneralizedFunction = "poly:0.1,0.30000000000000004".parse().unwrap();
        let c = f.as_poly().unwrap().coeffs();
        assert_eq!(c[0].to_bits(), 0.1f64.to_bits());
        assert_eq!(c[1].to_bits(), (0.1f64 + 0.2).to_bits());
        let back: GeneralizedFunction = f.to_string().parse().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn piecewise_function_surface() {
        let al = a(0.5);
        let pw = PiecewiseTermList::abs_power(1.0, LinForm::new(-2.0, 1.0), 1, 0.0, 1.0).unwrap();
        let f = GeneralizedFunction::Piecewise(pw);
        assert!((f.eval(0.0, al).unwrap() - 1.0).abs() < 1e-15);
        assert!(f.eval(2.0, al).is_err());
        let whole = f.lf_integral(iv(0.0, 1.0), al).unwrap();
        assert!((whole - 2f64.powf(0.5) * gamma_ratio(1, 2, al)).abs() < 1e-14);
        let d = f.deriv_alpha(al).unwrap();
        assert!((d.eval(0.25, al).unwrap() + 2f64.sqrt() * crate::special::gamma(1.5).unwrap()).abs() < 1e-14);
    }

    fn arb_poly() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-3.0f64..3.0, 1..=7)
    }

    proptest! {
        #[test]
        fn fundamental_theorem(c in arb_poly(), ai in 1u32..=10, lo in 0.0f64..2.5, len in 0.1f64..2.5) {
            let al = a(ai as f64 / 10.0);
            let g = GeneralizedFunction::poly(c).unwrap();
            let i = iv(lo, lo + len);
            let lhs = g.deriv_alpha(al).unwrap().lf_integral(i, al).unwrap();
            let rhs = g.eval(i.b(), al).unwrap() - g.eval(i.a(), al).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs().max(1.0));
        }

        #[test]
        fn compose_consistency(c in arb_poly(), ai in 1u32..=10, u in -2.0f64..2.0, v in 2.0f64..4.0, t in 0.0f64..1.0) {
            let al = a(ai as f64 / 10.0);
            let f = GeneralizedFunction::poly(c).unwrap();
            let terms = f.compose_affine(u, v).unwrap();
            let lhs = eval_terms(&terms, t, al);
            let rhs = f.eval(u * t + v, al).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }
}
