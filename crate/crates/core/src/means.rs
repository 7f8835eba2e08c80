//! Generalized arithmetic and log-type means and the special-means
//! inequalities derived from the trapezoid and midpoint bounds with
//! f(x) = x^(nα).

use crate::alpha::signed_pow;
use crate::error::{Error, Result};
use crate::hh_verify::{thm3_check, thm4_check, VerifyOptions};
use crate::lf_funcs::{AlphaPoly, GeneralizedFunction, Interval};
use crate::report::{Status, TheoremId, TheoremReport};
use crate::special::{gamma, gamma_ratio, Alpha};

/// A(a, b) = (a^α + b^α)/2^α
pub fn mean_a(a: f64, b: f64, alpha: Alpha) -> f64 {
    (signed_pow(a, alpha) + signed_pow(b, alpha)) / 2f64.powf(alpha.get())
}

/// L_n(a, b) = [Γ(1+nα)/Γ(1+(n+1)α)·(b^((n+1)α) − a^((n+1)α))]^(1/n).
///
/// Only n ≥ 1 is accepted and the bracket must be positive; the root is the
/// real positive one.
pub fn mean_ln(a: f64, b: f64, n: i32, alpha: Alpha) -> Result<f64> {
    if n == 0 || n == -1 {
        return Err(Error::MeanUndefined(format!("L_n needs n outside {{-1, 0}}, got {n}")));
    }
    if n < 0 {
        return Err(Error::MeanUndefined(format!("negative n = {n} leaves the α-polynomial class")));
    }
    let k = n as u32;
    let x = alpha.get();
    let bracket =
        gamma_ratio(k, k + 1, alpha) * (signed_pow(b, alpha).powi(n + 1) - signed_pow(a, alpha).powi(n + 1));
    if bracket.is_nan() || bracket <= 0.0 {
        return Err(Error::MeanUndefined(format!("L_{n}({a}, {b}) bracket is {bracket} at α = {x}")));
    }
    Ok(bracket.powf(1.0 / f64::from(n)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeansRecord {
    pub a: f64,
    pub b: f64,
    pub n: i32,
    pub alpha: f64,
    pub a_value: f64,
    pub ln_value: f64,
}

impl MeansRecord {
    pub fn new(a: f64, b: f64, n: i32, alpha: Alpha) -> Result<Self> {
        if a == b {
            return Err(Error::MeanUndefined("a = b".into()));
        }
        Ok(MeansRecord { a, b, n, alpha: alpha.get(), a_value: mean_a(a, b, alpha), ln_value: mean_ln(a, b, n, alpha)? })
    }
}

/// Both special-means inequalities for f(x) = x^(nα) on [a, b].
///
/// The first record compares |A(aⁿ, bⁿ) − Γ(1+α)/(b−a)^α·L_nⁿ| with the
/// trapezoid bound, the second |A(a, b)ⁿ − Γ(1+α)/(b−a)^α·L_nⁿ| with the
/// midpoint bound. The second left side is the means form as printed; it
/// equals |f(m) − mean| only at α = 1, and the theorem form is kept in the
/// details under `theorem_lhs`.
pub fn prop1_check(
    a: f64,
    b: f64,
    n: i32,
    alpha: Alpha,
    p: f64,
    q: f64,
    opts: &VerifyOptions,
) -> (TheoremReport, TheoremReport) {
    let name = format!("x^({n}α)");
    let fresh = || TheoremReport::new(TheoremId::Prop1, alpha.get(), (a, b), name.clone()).with_pq(p, q);
    let setup = || -> Result<(Interval, GeneralizedFunction)> {
        let iv = Interval::new(a, b)?;
        if n < 2 {
            return Err(Error::MeanUndefined(format!("n = {n}; only n ≥ 2 is supported here")));
        }
        if a <= 0.0 && b >= 0.0 {
            return Err(Error::MeanUndefined(format!("0 lies in [{a}, {b}]")));
        }
        if a < 0.0 {
            return Err(Error::Domain { x: a, what: name.clone() });
        }
        Ok((iv, GeneralizedFunction::AlphaPoly(AlphaPoly::monomial(n as usize, 1.0)?)))
    };
    let (iv, f) = match setup() {
        Ok(v) => v,
        Err(e) => return (fresh().failed(&e), fresh().failed(&e)),
    };

    let x = alpha.get();
    let normalized_ln = |ln: f64| gamma(1.0 + x).map(|g| g / iv.length().powf(x) * ln.powi(n));

    let first = {
        let mut r = fresh();
        let base = thm3_check(&f, iv, alpha, p, q, opts);
        let lhs = mean_ln(a, b, n, alpha)
            .and_then(|ln| normalized_ln(ln).map(|mean| (mean_a(a.powi(n), b.powi(n), alpha) - mean).abs()));
        match (lhs, base.status) {
            (Err(e), _) => r = r.failed(&e),
            (Ok(_), Status::Error) => r = r.failed(&Error::Unsupported(base.note.clone())),
            (Ok(lhs), status) => {
                copy_bound(&mut r, &base, lhs, opts);
                r.status = status;
                r.push_detail("theorem_lhs", base.lhs);
                r.note = format!("first inequality (A(aⁿ,bⁿ) form); {}", base.note);
            }
        }
        r
    };

    let second = {
        let mut r = fresh();
        let base = thm4_check(&f, iv, alpha, p, q, opts);
        let lhs = mean_ln(a, b, n, alpha)
            .and_then(|ln| normalized_ln(ln).map(|mean| (mean_a(a, b, alpha).powi(n) - mean).abs()));
        match (lhs, base.status) {
            (Err(e), _) => r = r.failed(&e),
            (Ok(_), Status::Error) => r = r.failed(&Error::Unsupported(base.note.clone())),
            (Ok(lhs), status) => {
                copy_bound(&mut r, &base, lhs, opts);
                r.status = status;
                r.push_detail("theorem_lhs", base.lhs);
                r.push_detail("theorem_margin", base.margin_engine.unwrap_or(f64::NAN));
                r.note = format!("second inequality (A(a,b)ⁿ form, theorem form lhs {:.12e}); {}", base.lhs, base.note);
            }
        }
        r
    };
    (first, second)
}

fn copy_bound(r: &mut TheoremReport, base: &TheoremReport, lhs: f64, opts: &VerifyOptions) {
    let paper = base.rhs_paper.unwrap_or(f64::NAN);
    let engine = base.rhs_engine.unwrap_or(f64::NAN);
    r.lhs = lhs;
    r.rhs_paper = Some(paper);
    r.rhs_engine = Some(engine);
    r.margin_engine = Some(engine - lhs);
    r.satisfied_paper = Some(paper - lhs >= -opts.bound_tol);
    r.satisfied_engine = Some(engine - lhs >= -opts.bound_tol);
}
