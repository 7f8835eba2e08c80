//! Hermite-Hadamard identities and bounds for local fractional integrals.
//!
//! Every bound record carries two right-hand sides: `rhs_paper` with the
//! constants in their printed closed form, and `rhs_engine` with the same
//! constants re-derived by the term integrator. The two agree at α = 1.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::convexity::{check_convex_with, check_generalized_convex, DEFAULT_GRID, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lf_funcs::{AlphaPoly, GeneralizedFunction, Interval};
use crate::report::{Status, TheoremId, TheoremReport};
use crate::special::{gamma, gamma_ratio, Alpha};
use crate::symterm::{integrate_piecewise, integrate_two_form, LinForm, PiecewiseTermList, PowTerm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Identities pass when |residual| ≤ identity_tol·max(1, |lhs|).
    pub identity_tol: f64,
    /// Bounds pass when rhs − lhs ≥ −bound_tol.
    pub bound_tol: f64,
    pub convexity_grid: usize,
    pub convexity_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { identity_tol: 1e-9, bound_tol: 1e-12, convexity_grid: DEFAULT_GRID, convexity_tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Eq32,
    Eq34,
    Eq35,
    Eq36T2,
    Eq36T1mt,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] =
        [KernelKind::Eq32, KernelKind::Eq34, KernelKind::Eq35, KernelKind::Eq36T2, KernelKind::Eq36T1mt];

    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::Eq32 => "eq32",
            KernelKind::Eq34 => "eq34",
            KernelKind::Eq35 => "eq35",
            KernelKind::Eq36T2 => "eq36_t2",
            KernelKind::Eq36T1mt => "eq36_t_1mt",
        }
    }

    /// The integral the constant stands for.
    pub fn integrand(self) -> &'static str {
        match self {
            KernelKind::Eq32 => "∫₀¹ |1−2t|^α",
            KernelKind::Eq34 => "∫₀¹ |1−2t|^α t^α",
            KernelKind::Eq35 => "∫ₐᵇ |S(x)|",
            KernelKind::Eq36T2 => "∫₀¹ t^(2α)",
            KernelKind::Eq36T1mt => "∫₀¹ t^α (1−t)^α",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstant {
    pub engine: f64,
    pub paper: f64,
}

impl KernelConstant {
    pub fn ratio(&self) -> f64 {
        self.engine / self.paper
    }
}

const ONE_MINUS_2T: LinForm = LinForm::new(-2.0, 1.0);
const TWO_T_MINUS_1: LinForm = LinForm::new(2.0, -1.0);
const ONE_MINUS_T: LinForm = LinForm::new(-1.0, 1.0);

/// |1−2t|^α split at t = 1/2, times an optional second factor.
fn abs_one_minus_2t(second: Option<LinForm>) -> PiecewiseTermList {
    let piece = |base| match second {
        Some(s) => vec![PowTerm::product(1.0, base, 1, s, 1)],
        None => vec![PowTerm::single(1.0, base, 1)],
    };
    PiecewiseTermList::new(vec![0.0, 0.5, 1.0], vec![piece(ONE_MINUS_2T), piece(TWO_T_MINUS_1)])
        .expect("fixed kernel pieces are valid")
}

fn engine_constant(kind: KernelKind, alpha: Alpha, iv: Option<Interval>) -> Result<f64> {
    match kind {
        KernelKind::Eq32 => integrate_piecewise(&abs_one_minus_2t(None), alpha),
        KernelKind::Eq34 => integrate_piecewise(&abs_one_minus_2t(Some(LinForm::IDENTITY)), alpha),
        KernelKind::Eq35 => {
            let iv = iv.ok_or_else(|| Error::Unsupported("eq35 needs an interval".into()))?;
            let s = SKernel::new(iv);
            let m = iv.midpoint();
            // |S| = (x−a)^α on the left half and (b−x)^α on the right
            let abs = PiecewiseTermList::new(
                vec![iv.a(), m, iv.b()],
                vec![vec![s.pieces.pieces()[0][0]], vec![PowTerm::single(1.0, LinForm::new(-1.0, iv.b()), 1)]],
            )?;
            integrate_piecewise(&abs, alpha)
        }
        KernelKind::Eq36T2 => integrate_two_form(&PowTerm::single(1.0, LinForm::IDENTITY, 2), 0.0, 1.0, alpha),
        KernelKind::Eq36T1mt => {
            integrate_two_form(&PowTerm::product(1.0, LinForm::IDENTITY, 1, ONE_MINUS_T, 1), 0.0, 1.0, alpha)
        }
    }
}

fn paper_constant(kind: KernelKind, alpha: Alpha, iv: Option<Interval>) -> Result<f64> {
    let a = alpha.get();
    let g12 = gamma_ratio(1, 2, alpha);
    let g23 = gamma_ratio(2, 3, alpha);
    Ok(match kind {
        KernelKind::Eq32 => g12,
        KernelKind::Eq34 => -g12 * 0.5f64.powf(a) + g23 * 1.5f64.powf(a),
        KernelKind::Eq35 => {
            let iv = iv.ok_or_else(|| Error::Unsupported("eq35 needs an interval".into()))?;
            g12 * 2f64.powf(a) * (iv.length() / 2.0).powf(2.0 * a)
        }
        KernelKind::Eq36T2 => g23,
        KernelKind::Eq36T1mt => g12 - g23,
    })
}

/// Engine and printed values of one kernel constant. Only eq35 uses `iv`.
pub fn kernel_constant(kind: KernelKind, alpha: Alpha, iv: Option<Interval>) -> Result<KernelConstant> {
    Ok(KernelConstant { engine: cached_engine_constant(kind, alpha, iv)?, paper: paper_constant(kind, alpha, iv)? })
}

type ConstantKey = (KernelKind, u64, Option<(u64, u64)>);

thread_local! {
    static ENGINE_CONSTANTS: RefCell<HashMap<ConstantKey, f64>> = RefCell::new(HashMap::new());
}

/// Bound checks ask for the same few constants over and over.
fn cached_engine_constant(kind: KernelKind, alpha: Alpha, iv: Option<Interval>) -> Result<f64> {
    let iv = if kind == KernelKind::Eq35 { iv } else { None };
    let key = (kind, alpha.get().to_bits(), iv.map(|i| (i.a().to_bits(), i.b().to_bits())));
    if let Some(v) = ENGINE_CONSTANTS.with(|c| c.borrow().get(&key).copied()) {
        return Ok(v);
    }
    let v = engine_constant(kind, alpha, iv)?;
    ENGINE_CONSTANTS.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 4096 {
            c.clear();
        }
        c.insert(key, v);
    });
    Ok(v)
}

/// ∫₀¹ |1−2t|^α (1−t)^α, the weight of |f^(α)(b)|^q in the trapezoid bound.
pub fn eq34_mirror_engine(alpha: Alpha) -> Result<f64> {
    thread_local! {
        static MIRROR: RefCell<HashMap<u64, f64>> = RefCell::new(HashMap::new());
    }
    let key = alpha.get().to_bits();
    if let Some(v) = MIRROR.with(|c| c.borrow().get(&key).copied()) {
        return Ok(v);
    }
    let v = integrate_piecewise(&abs_one_minus_2t(Some(ONE_MINUS_T)), alpha)?;
    MIRROR.with(|c| c.borrow_mut().insert(key, v));
    Ok(v)
}

/// Record for one kernel constant.
pub fn constants_record(kind: KernelKind, alpha: Alpha, iv: Interval) -> TheoremReport {
    let mut r = TheoremReport::new(TheoremId::Constants, alpha.get(), (iv.a(), iv.b()), kind.as_str());
    match kernel_constant(kind, alpha, Some(iv)) {
        Ok(k) => {
            r.lhs = k.engine;
            r.rhs_paper = Some(k.paper);
            r.rhs_engine = Some(k.engine);
            r.push_detail("ratio", k.ratio());
            r.push_detail("two_pow_one_minus_alpha", 2f64.powf(1.0 - alpha.get()));
            r.note = format!("{}: engine/paper = {:.12}", kind.integrand(), k.ratio());
            if (k.ratio() - 1.0).abs() > 1e-12 {
                let why = match kind {
                    KernelKind::Eq32 => " = 2^(1−α): the printed value omits the factor from splitting at t = 1/2",
                    _ => "; printed closed form agrees with the by-parts value only at α = 1",
                };
                r.note.push_str(why);
            }
            r
        }
        Err(e) => r.failed(&e),
    }
}

/// S(x) = (x−a)^α on [a, m), (x−b)^α on [m, b], with m the midpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct SKernel {
    iv: Interval,
    pieces: PiecewiseTermList,
}

impl SKernel {
    pub fn new(iv: Interval) -> Self {
        let pieces = PiecewiseTermList::new(
            vec![iv.a(), iv.midpoint(), iv.b()],
            vec![
                vec![PowTerm::single(1.0, LinForm::new(1.0, -iv.a()), 1)],
                vec![PowTerm::single(1.0, LinForm::new(1.0, -iv.b()), 1)],
            ],
        )
        .expect("a < b gives a valid kernel");
        SKernel { iv, pieces }
    }

    pub fn pieces(&self) -> &PiecewiseTermList {
        &self.pieces
    }

    pub fn eval(&self, x: f64, alpha: Alpha) -> Option<f64> {
        self.pieces.eval(x, alpha)
    }

    /// S(x)·g(x) for g = Σ d_j x^(jα): on each half the kernel is the second
    /// factor and x^(jα) the first.
    pub fn times_poly(&self, g: &AlphaPoly) -> Result<PiecewiseTermList> {
        let (a, b) = (self.iv.a(), self.iv.b());
        let half = |root: f64| -> Vec<PowTerm> {
            g.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, d)| **d != 0.0)
                .map(|(j, d)| PowTerm::product(*d, LinForm::IDENTITY, j as u32, LinForm::new(1.0, -root), 1))
                .collect()
        };
        PiecewiseTermList::new(vec![a, self.iv.midpoint(), b], vec![half(a), half(b)])
    }
}

fn poly_of<'a>(f: &'a GeneralizedFunction, what: &str) -> Result<&'a AlphaPoly> {
    f.as_poly().ok_or_else(|| Error::Unsupported(format!("{what} is defined for α-polynomials only")))
}

fn descriptor(f: &GeneralizedFunction) -> String {
    f.to_string()
}

fn base_report(theorem: TheoremId, f: &GeneralizedFunction, iv: Interval, alpha: Alpha) -> TheoremReport {
    TheoremReport::new(theorem, alpha.get(), (iv.a(), iv.b()), descriptor(f))
}

/// Γ(1+α)/(b−a)^α · aI_b^(α) f
pub fn integral_mean(f: &GeneralizedFunction, iv: Interval, alpha: Alpha) -> Result<f64> {
    let a = alpha.get();
    Ok(gamma(1.0 + a)? / iv.length().powf(a) * f.lf_integral(iv, alpha)?)
}

fn finish_identity(r: &mut TheoremReport, lhs: f64, rhs: f64, opts: &VerifyOptions) {
    let residual = lhs - rhs;
    let ok = residual.abs() <= opts.identity_tol * lhs.abs().max(1.0);
    r.lhs = lhs;
    r.rhs_paper = Some(rhs);
    r.rhs_engine = Some(rhs);
    r.residual = Some(residual);
    r.satisfied_paper = Some(ok);
    r.satisfied_engine = Some(ok);
}

fn thm1_values(p: &AlphaPoly, iv: Interval, alpha: Alpha) -> Result<(f64, f64)> {
    let a = alpha.get();
    let (lo, hi) = (iv.a(), iv.b());
    let two_a = 2f64.powf(a);
    let lhs = (p.eval(lo, alpha)? + p.eval(hi, alpha)?) / two_a
        - integral_mean(&GeneralizedFunction::AlphaPoly(p.clone()), iv, alpha)?;

    // f^(α)(ta + (1−t)b) = Σ d_j ((a−b)t + b)^(jα), times (1−2t)^α
    let terms: Vec<PowTerm> = p
        .deriv_alpha(alpha)
        .compose_affine(lo - hi, hi)
        .into_iter()
        .map(|t| PowTerm::product(t.coeff, t.first.base, t.first.exp, ONE_MINUS_2T, 1))
        .collect();
    let pw = PiecewiseTermList::new(vec![0.0, 0.5, 1.0], vec![terms.clone(), terms])?;
    let rhs = iv.length().powf(a) / two_a * integrate_piecewise(&pw, alpha)?;
    Ok((lhs, rhs))
}

/// (f(a)+f(b))/2^α − Γ(1+α)/(b−a)^α·aI_b f against
/// ((b−a)^α/2^α)·∫₀¹ (1−2t)^α f^(α)(ta+(1−t)b).
pub fn thm1_residual(f: &GeneralizedFunction, iv: Interval, alpha: Alpha, opts: &VerifyOptions) -> TheoremReport {
    let mut r = base_report(TheoremId::Thm1, f, iv, alpha);
    let values = poly_of(f, "thm1").and_then(|p| thm1_values(p, iv, alpha).map(|v| (p, v)));
    match values {
        Ok((p, (lhs, rhs))) => {
            finish_identity(&mut r, lhs, rhs, opts);
            let c0 = p.constant_term();
            if c0 != 0.0 && alpha.get() < 1.0 {
                let a = alpha.get();
                let defect = c0 * (2f64.powf(1.0 - a) - (iv.b().powf(a) - iv.a().powf(a)) / iv.length().powf(a));
                r.push_detail("constant_term_lhs", defect);
                r.note = format!(
                    "constant term adds c0·(2^(1−α) − (b^α−a^α)/(b−a)^α) = {defect:.6e} to the left side only"
                );
            }
            r
        }
        Err(e) => r.failed(&e),
    }
}

fn thm2_values(p: &AlphaPoly, iv: Interval, alpha: Alpha) -> Result<(f64, f64)> {
    let lhs = p.eval(iv.midpoint(), alpha)? - integral_mean(&GeneralizedFunction::AlphaPoly(p.clone()), iv, alpha)?;
    let pw = SKernel::new(iv).times_poly(&p.deriv_alpha(alpha))?;
    let rhs = integrate_piecewise(&pw, alpha)? / iv.length().powf(alpha.get());
    Ok((lhs, rhs))
}

/// f((a+b)/2) − Γ(1+α)/(b−a)^α·aI_b f against (1/(b−a)^α)·∫ S(x) f^(α)(x).
pub fn thm2_residual(f: &GeneralizedFunction, iv: Interval, alpha: Alpha, opts: &VerifyOptions) -> TheoremReport {
    let mut r = base_report(TheoremId::Thm2, f, iv, alpha);
    match poly_of(f, "thm2").and_then(|p| thm2_values(p, iv, alpha)) {
        Ok((lhs, rhs)) => {
            finish_identity(&mut r, lhs, rhs, opts);
            r
        }
        Err(e) => r.failed(&e),
    }
}

/// f((a+b)/2) ≤ Γ(1+α)/(b−a)^α·aI_b f ≤ (f(a)+f(b))/2^α.
///
/// `lhs` is the integral mean, `rhs_*` the trapezoid side; the margin is the
/// smaller of the two gaps.
pub fn thmd_check(f: &GeneralizedFunction, iv: Interval, alpha: Alpha, opts: &VerifyOptions) -> TheoremReport {
    let mut r = base_report(TheoremId::ThmD, f, iv, alpha);
    let run = || -> Result<(f64, f64, f64, bool)> {
        let conv = check_generalized_convex(f, iv, alpha, opts.convexity_grid, opts.convexity_tol)?;
        let left = f.eval(iv.midpoint(), alpha)?;
        let mean = integral_mean(f, iv, alpha)?;
        let right = (f.eval(iv.a(), alpha)? + f.eval(iv.b(), alpha)?) / 2f64.powf(alpha.get());
        Ok((left, mean, right, conv.passed))
    };
    match run() {
        Ok((left, mean, right, convex)) => {
            let (m_left, m_right) = (mean - left, right - mean);
            let margin = m_left.min(m_right);
            let ok = margin >= -opts.bound_tol;
            r.lhs = mean;
            r.rhs_paper = Some(right);
            r.rhs_engine = Some(right);
            r.margin_engine = Some(margin);
            r.satisfied_paper = Some(ok);
            r.satisfied_engine = Some(ok);
            r.push_detail("midpoint_value", left);
            r.push_detail("integral_mean", mean);
            r.push_detail("trapezoid_value", right);
            r.push_detail("margin_left", m_left);
            r.push_detail("margin_right", m_right);
            r.note = format!("f(m) = {left:.12e}, mean = {mean:.12e}, (f(a)+f(b))/2^α = {right:.12e}");
            if !convex {
                r.status = Status::PreconditionFailed;
                r.append_note("f is not generalized convex on the sampling grid");
            }
            r
        }
        Err(e) => r.failed(&e),
    }
}

fn check_exponents(p: f64, q: f64) -> Result<()> {
    if !(p > 1.0 && q > 1.0) || !p.is_finite() || !q.is_finite() || (1.0 / p + 1.0 / q - 1.0).abs() >= 1e-12 {
        return Err(Error::Exponent { p, q });
    }
    Ok(())
}

/// Endpoint factors |f^(α)(a)|^q, |f^(α)(b)|^q and whether |f^(α)|^q passes
/// the sampled convexity check.
#[derive(Debug, Clone, Copy)]
struct DerivativeData {
    fa: f64,
    fb: f64,
    convex: bool,
}

type DerivativeKey = (Vec<u64>, [u64; 4], usize, u64);

thread_local! {
    static DERIVATIVE_DATA: RefCell<HashMap<DerivativeKey, DerivativeData>> = RefCell::new(HashMap::new());
}

/// The sampled precondition dominates a bound check and does not depend on
/// the constant term or on which bound is asked for, so it is memoized.
fn derivative_data(p: &AlphaPoly, iv: Interval, alpha: Alpha, q: f64, opts: &VerifyOptions) -> Result<DerivativeData> {
    let key = (
        p.coeffs().iter().skip(1).map(|c| c.to_bits()).chain([u64::from(p.is_signed())]).collect(),
        [iv.a().to_bits(), iv.b().to_bits(), alpha.get().to_bits(), q.to_bits()],
        opts.convexity_grid,
        opts.convexity_tol.to_bits(),
    );
    if let Some(dd) = DERIVATIVE_DATA.with(|c| c.borrow().get(&key).copied()) {
        return Ok(dd);
    }
    let dd = compute_derivative_data(p, iv, alpha, q, opts)?;
    DERIVATIVE_DATA.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(key, dd);
    });
    Ok(dd)
}

fn compute_derivative_data(p: &AlphaPoly, iv: Interval, alpha: Alpha, q: f64, opts: &VerifyOptions) -> Result<DerivativeData> {
    let d = p.deriv_alpha(alpha);
    let constant_derivative = !d.has_power_terms();
    let definite = p.without_constant().is_sign_definite();
    if !definite || (!constant_derivative && iv.a() < 0.0) {
        return Err(Error::MixedSignDerivative);
    }
    let g = |x: f64| d.eval(x, alpha).map(|v| v.abs().powf(q));
    let conv = check_convex_with(g, iv, alpha, opts.convexity_grid, opts.convexity_tol)?;
    Ok(DerivativeData { fa: g(iv.a())?, fb: g(iv.b())?, convex: conv.passed })
}

fn finish_bound(r: &mut TheoremReport, lhs: f64, rhs_paper: f64, rhs_engine: f64, opts: &VerifyOptions) {
    r.lhs = lhs;
    r.rhs_paper = Some(rhs_paper);
    r.rhs_engine = Some(rhs_engine);
    r.margin_engine = Some(rhs_engine - lhs);
    r.satisfied_paper = Some(rhs_paper - lhs >= -opts.bound_tol);
    r.satisfied_engine = Some(rhs_engine - lhs >= -opts.bound_tol);
}

/// Trapezoid-side right-hand sides (paper, engine) for given endpoint factors.
pub fn thm3_rhs(iv: Interval, alpha: Alpha, p: f64, q: f64, fa: f64, fb: f64) -> Result<(f64, f64)> {
    let a = alpha.get();
    let scale = iv.length().powf(a) / 2f64.powf(a);
    let c32 = kernel_constant(KernelKind::Eq32, alpha, None)?;
    let c34 = kernel_constant(KernelKind::Eq34, alpha, None)?;
    let c34_mirror = eq34_mirror_engine(alpha)?;
    let paper = scale * (fa + fb).powf(1.0 / q) * c32.paper.powf(1.0 / p) * c34.paper.powf(1.0 / q);
    let engine = scale * c32.engine.powf(1.0 / p) * (fa * c34.engine + fb * c34_mirror).powf(1.0 / q);
    Ok((paper, engine))
}

/// Midpoint-side right-hand sides (paper, engine) for given endpoint factors.
pub fn thm4_rhs(iv: Interval, alpha: Alpha, p: f64, q: f64, fa: f64, fb: f64) -> Result<(f64, f64)> {
    let a = alpha.get();
    let len = iv.length();
    let g12 = gamma_ratio(1, 2, alpha);
    let paper =
        len.powf(a) / 4f64.powf(a) * (2f64.powf(a) * g12).powf(1.0 / p) * (g12 * (fa + fb)).powf(1.0 / q);
    let c35 = kernel_constant(KernelKind::Eq35, alpha, Some(iv))?.engine;
    let t2 = kernel_constant(KernelKind::Eq36T2, alpha, None)?.engine;
    let t1mt = kernel_constant(KernelKind::Eq36T1mt, alpha, None)?.engine;
    let inner = (len / 2.0).powf(2.0 * a) * (fa + fb) * (2.0 * t2 / 2f64.powf(a) + t1mt);
    let engine = c35.powf(1.0 / p) * inner.powf(1.0 / q) / len.powf(a);
    Ok((paper, engine))
}

fn bound_check(
    theorem: TheoremId,
    f: &GeneralizedFunction,
    iv: Interval,
    alpha: Alpha,
    p: f64,
    q: f64,
    opts: &VerifyOptions,
) -> TheoremReport {
    let mut r = base_report(theorem, f, iv, alpha).with_pq(p, q);
    let run = || -> Result<(f64, f64, f64, bool)> {
        check_exponents(p, q)?;
        let poly = poly_of(f, theorem.as_str())?;
        let dd = derivative_data(poly, iv, alpha, q, opts)?;
        let (lhs, (paper, engine)) = if theorem == TheoremId::Thm3 {
            (thm1_values(poly, iv, alpha)?.0.abs(), thm3_rhs(iv, alpha, p, q, dd.fa, dd.fb)?)
        } else {
            (thm2_values(poly, iv, alpha)?.0.abs(), thm4_rhs(iv, alpha, p, q, dd.fa, dd.fb)?)
        };
        Ok((lhs, paper, engine, dd.convex))
    };
    match run() {
        Ok((lhs, paper, engine, convex)) => {
            finish_bound(&mut r, lhs, paper, engine, opts);
            if (paper - engine).abs() > 1e-12 * engine.abs().max(1.0) {
                r.append_note(&format!("rhs_paper differs from rhs_engine (ratio {:.12})", paper / engine));
            }
            if theorem == TheoremId::Thm4 {
                r.append_note("final equality of the midpoint bound read as ≤");
            }
            if !convex {
                r.status = Status::PreconditionFailed;
                r.append_note("|f^(α)|^q is not generalized convex on the sampling grid");
            }
            r
        }
        Err(e) => r.failed(&e),
    }
}

/// |trapezoid − mean| against the Hölder-convexity bound.
pub fn thm3_check(
    f: &GeneralizedFunction,
    iv: Interval,
    alpha: Alpha,
    p: f64,
    q: f64,
    opts: &VerifyOptions,
) -> TheoremReport {
    bound_check(TheoremId::Thm3, f, iv, alpha, p, q, opts)
}

/// |midpoint − mean| against the Hölder-convexity bound.
pub fn thm4_check(
    f: &GeneralizedFunction,
    iv: Interval,
    alpha: Alpha,
    p: f64,
    q: f64,
    opts: &VerifyOptions,
) -> TheoremReport {
    bound_check(TheoremId::Thm4, f, iv, alpha, p, q, opts)
}

/// |term| as a single-base term with a nonnegative base on [lo, hi], raised
/// to the power `r` (k·r must be an integer).
fn abs_power(term: &PowTerm, lo: f64, hi: f64, r: f64, alpha: Alpha) -> Result<PowTerm> {
    let t = term.canonical(alpha);
    if !t.second.is_unit() {
        return Err(Error::Unsupported("Hölder check needs single-base terms".into()));
    }
    let k = t.first.exp;
    let kr = f64::from(k) * r;
    if (kr - kr.round()).abs() > 1e-9 {
        return Err(Error::ClassClosure { k, power: r });
    }
    let mut base = t.first.base;
    if !base.is_constant() || k > 0 {
        if let Some(root) = base.root() {
            if root > lo && root < hi {
                return Err(Error::SignChange { root, lo, hi });
            }
        }
        if base.eval(0.5 * (lo + hi)) < 0.0 {
            base = base.negate();
        }
    }
    let coeff = if k == 0 { t.eval(0.5 * (lo + hi), alpha).abs() } else { t.coeff.abs() };
    let power_k = kr.round() as u32;
    Ok(if k == 0 { PowTerm::constant(coeff.powf(r)) } else { PowTerm::single(coeff.powf(r), base, power_k) })
}

/// (1/Γ(1+α))∫|fg| ≤ (∫|f|^p)^(1/p)·(∫|g|^q)^(1/q), every integral in the
/// term class.
pub fn holder_check(
    f: &PowTerm,
    g: &PowTerm,
    iv: Interval,
    alpha: Alpha,
    p: f64,
    q: f64,
    opts: &VerifyOptions,
) -> TheoremReport {
    let (lo, hi) = (iv.a(), iv.b());
    let name = format!("{} * {}", term_descriptor(f), term_descriptor(g));
    let mut r = TheoremReport::new(TheoremId::Holder, alpha.get(), (lo, hi), name).with_pq(p, q);
    let run = || -> Result<(f64, f64)> {
        check_exponents(p, q)?;
        let fa = abs_power(f, lo, hi, 1.0, alpha)?;
        let ga = abs_power(g, lo, hi, 1.0, alpha)?;
        let lhs = integrate_two_form(&fa.mul(&ga, alpha)?, lo, hi, alpha)?;
        let fp = integrate_two_form(&abs_power(f, lo, hi, p, alpha)?, lo, hi, alpha)?;
        let gq = integrate_two_form(&abs_power(g, lo, hi, q, alpha)?, lo, hi, alpha)?;
        Ok((lhs, fp.powf(1.0 / p) * gq.powf(1.0 / q)))
    };
    match run() {
        Ok((lhs, rhs)) => {
            finish_bound(&mut r, lhs, rhs, rhs, opts);
            r
        }
        Err(e) => r.failed(&e),
    }
}

fn term_descriptor(t: &PowTerm) -> String {
    let factor = |f: &crate::symterm::Factor| {
        format!("({}t{:+})^{}α", f.base.slope, f.base.intercept, f.exp)
    };
    match (t.first.is_unit(), t.second.is_unit()) {
        (true, _) => format!("{}", t.coeff),
        (false, true) => format!("{}·{}", t.coeff, factor(&t.first)),
        (false, false) => format!("{}·{}·{}", t.coeff, factor(&t.first), factor(&t.second)),
    }
}

/// (b−a)/4·[(Fa+Fb)/2]^(1/q), the classical bound both forms reduce to at α = 1.
pub fn classical_bound(iv: Interval, q: f64, fa: f64, fb: f64) -> f64 {
    iv.length() / 4.0 * ((fa + fb) / 2.0).powf(1.0 / q)
}
