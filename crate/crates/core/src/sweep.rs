//! Cartesian-product sweeps over α, functions, intervals and exponents.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::convexity::check_generalized_convex;
use crate::error::{Error, Result};
use crate::hh_verify::{
    constants_record, holder_check, kernel_constant, thm1_residual, thm2_residual, thm3_check, thm4_check,
    thmd_check, KernelKind, VerifyOptions,
};
use crate::lf_funcs::{GeneralizedFunction, Interval};
use crate::means::prop1_check;
use crate::report::{sort_records, Status, TheoremId, TheoremReport};
use crate::special::Alpha;
use crate::symterm::{LinForm, PowTerm};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub theorems: Vec<TheoremId>,
    pub alphas: Vec<Alpha>,
    pub functions: Vec<GeneralizedFunction>,
    pub intervals: Vec<Interval>,
    pub exponents: Vec<(f64, f64)>,
    pub n_values: Vec<i32>,
    pub options: VerifyOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: Vec::new(),
            alphas: Vec::new(),
            functions: Vec::new(),
            intervals: Vec::new(),
            exponents: vec![(2.0, 2.0)],
            n_values: vec![2],
            options: VerifyOptions::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let empty = |what: &str| Err(Error::Unsupported(format!("sweep needs at least one {what}")));
        if self.theorems.is_empty() {
            return empty("theorem");
        }
        if self.alphas.is_empty() {
            return empty("alpha");
        }
        if self.functions.is_empty() {
            return empty("function");
        }
        if self.intervals.is_empty() {
            return empty("interval");
        }
        if self.theorems.iter().any(|t| t.uses_pq()) && self.exponents.is_empty() {
            return empty("(p, q) pair");
        }
        if self.theorems.contains(&TheoremId::Prop1) && self.n_values.is_empty() {
            return empty("n");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub satisfied: usize,
    pub violated: usize,
    pub precondition_failed: usize,
    pub errored: usize,
    /// Records without a verdict (constants tables, …).
    pub informational: usize,
}

impl Summary {
    pub fn of(records: &[TheoremReport]) -> Self {
        let mut s = Summary { total: records.len(), ..Summary::default() };
        for r in records {
            match (r.status, r.satisfied_engine) {
                (Status::Error, _) => s.errored += 1,
                (Status::PreconditionFailed, _) => s.precondition_failed += 1,
                (Status::Ok, Some(true)) => s.satisfied += 1,
                (Status::Ok, Some(false)) => s.violated += 1,
                (Status::Ok, None) => s.informational += 1,
            }
        }
        s
    }

    /// 0 when nothing was violated or errored, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.violated == 0 && self.errored == 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<TheoremReport>,
    pub summary: Summary,
}

/// One row of the per-α constants table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsRow {
    pub alpha: f64,
    pub kind: KernelKind,
    pub engine: f64,
    pub paper: f64,
}

/// eq32, eq34 and eq35 (on `iv`) for each α, in input order.
pub fn constants_table(alphas: &[Alpha], iv: Interval) -> Result<Vec<ConstantsRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * 3);
    for &alpha in alphas {
        for kind in [KernelKind::Eq32, KernelKind::Eq34, KernelKind::Eq35] {
            let k = kernel_constant(kind, alpha, Some(iv))?;
            rows.push(ConstantsRow { alpha: alpha.get(), kind, engine: k.engine, paper: k.paper });
        }
    }
    Ok(rows)
}

pub fn write_constants_csv<W: std::io::Write>(out: W, rows: &[ConstantsRow]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "kind", "engine", "paper", "ratio"])?;
    for r in rows {
        w.write_record([
            format!("{:.16e}", r.alpha),
            r.kind.as_str().to_string(),
            format!("{:.16e}", r.engine),
            format!("{:.16e}", r.paper),
            format!("{:.16e}", r.engine / r.paper),
        ])?;
    }
    w.flush()
}

/// Record form of the convexity check: `lhs`/`rhs` are the witness sides
/// when it fails.
pub fn convexity_record(f: &GeneralizedFunction, iv: Interval, alpha: Alpha, opts: &VerifyOptions) -> TheoremReport {
    let mut r = TheoremReport::new(TheoremId::Convexity, alpha.get(), (iv.a(), iv.b()), f.to_string());
    match check_generalized_convex(f, iv, alpha, opts.convexity_grid, opts.convexity_tol) {
        Ok(c) => {
            r.satisfied_engine = Some(c.passed);
            r.push_detail("samples_used", c.samples_used as f64);
            match c.witness {
                Some(w) => {
                    r.lhs = w.lhs;
                    r.rhs_engine = Some(w.rhs);
                    r.margin_engine = Some(w.rhs - w.lhs);
                    r.push_detail("x1", w.x1);
                    r.push_detail("x2", w.x2);
                    r.push_detail("lambda", w.lambda);
                    r.note = format!("witness x1 = {}, x2 = {}, lambda = {}", w.x1, w.x2, w.lambda);
                }
                None => {
                    r.note = format!("no violation on a {}-point grid ({} triples)", opts.convexity_grid, c.samples_used);
                }
            }
            r
        }
        Err(e) => r.failed(&e),
    }
}

/// c·x^(kα) as a term; anything else is not a single-base term.
fn monomial_term(f: &GeneralizedFunction) -> Result<PowTerm> {
    let p = f.as_poly().ok_or_else(|| Error::Unsupported("Hölder check needs monomials".into()))?;
    let nonzero: Vec<(usize, f64)> = p.coeffs().iter().copied().enumerate().filter(|(_, c)| *c != 0.0).collect();
    match nonzero.as_slice() {
        [] => Ok(PowTerm::constant(0.0)),
        [(0, c)] => Ok(PowTerm::constant(*c)),
        [(k, c)] => Ok(PowTerm::single(*c, LinForm::IDENTITY, *k as u32)),
        _ => Err(Error::Unsupported(format!("Hölder check needs monomials, got {f}"))),
    }
}

enum Job<'a> {
    Thm1(&'a GeneralizedFunction, Interval, Alpha),
    Thm2(&'a GeneralizedFunction, Interval, Alpha),
    ThmD(&'a GeneralizedFunction, Interval, Alpha),
    Thm3(&'a GeneralizedFunction, Interval, Alpha, f64, f64),
    Thm4(&'a GeneralizedFunction, Interval, Alpha, f64, f64),
    Holder(&'a GeneralizedFunction, &'a GeneralizedFunction, Interval, Alpha, f64, f64),
    Prop1(Interval, i32, Alpha, f64, f64),
    Convexity(&'a GeneralizedFunction, Interval, Alpha),
    Constants(KernelKind, Interval, Alpha),
}

impl Job<'_> {
    fn run(&self, opts: &VerifyOptions) -> Vec<TheoremReport> {
        match *self {
            Job::Thm1(f, iv, a) => vec![thm1_residual(f, iv, a, opts)],
            Job::Thm2(f, iv, a) => vec![thm2_residual(f, iv, a, opts)],
            Job::ThmD(f, iv, a) => vec![thmd_check(f, iv, a, opts)],
            Job::Thm3(f, iv, a, p, q) => vec![thm3_check(f, iv, a, p, q, opts)],
            Job::Thm4(f, iv, a, p, q) => vec![thm4_check(f, iv, a, p, q, opts)],
            Job::Holder(f, g, iv, a, p, q) => {
                let name = format!("{f} * {g}");
                let record = match (monomial_term(f), monomial_term(g)) {
                    (Ok(ft), Ok(gt)) => holder_check(&ft, &gt, iv, a, p, q, opts),
                    (Err(e), _) | (_, Err(e)) => {
                        TheoremReport::new(TheoremId::Holder, a.get(), (iv.a(), iv.b()), "").with_pq(p, q).failed(&e)
                    }
                };
                vec![TheoremReport { function: name, ..record }]
            }
            Job::Prop1(iv, n, a, p, q) => {
                let (r1, r2) = prop1_check(iv.a(), iv.b(), n, a, p, q, opts);
                vec![r1, r2]
            }
            Job::Convexity(f, iv, a) => vec![convexity_record(f, iv, a, opts)],
            Job::Constants(kind, iv, a) => vec![constants_record(kind, a, iv)],
        }
    }
}

fn jobs(config: &SweepConfig) -> Vec<Job<'_>> {
    let mut out = Vec::new();
    for &theorem in &config.theorems {
        for &alpha in &config.alphas {
            for &iv in &config.intervals {
                match theorem {
                    TheoremId::Prop1 => {
                        for &n in &config.n_values {
                            for &(p, q) in &config.exponents {
                                out.push(Job::Prop1(iv, n, alpha, p, q));
                            }
                        }
                    }
                    TheoremId::Constants => {
                        out.extend(KernelKind::ALL.iter().map(|&k| Job::Constants(k, iv, alpha)));
                    }
                    _ => {
                        for f in &config.functions {
                            match theorem {
                                TheoremId::Thm1 => out.push(Job::Thm1(f, iv, alpha)),
                                TheoremId::Thm2 => out.push(Job::Thm2(f, iv, alpha)),
                                TheoremId::ThmD => out.push(Job::ThmD(f, iv, alpha)),
                                TheoremId::Convexity => out.push(Job::Convexity(f, iv, alpha)),
                                TheoremId::Thm3 | TheoremId::Thm4 | TheoremId::Holder => {
                                    for &(p, q) in &config.exponents {
                                        match theorem {
                                            TheoremId::Thm3 => out.push(Job::Thm3(f, iv, alpha, p, q)),
                                            TheoremId::Thm4 => out.push(Job::Thm4(f, iv, alpha, p, q)),
                                            _ => out.extend(
                                                config.functions.iter().map(|g| Job::Holder(f, g, iv, alpha, p, q)),
                                            ),
                                        }
                                    }
                                }
                                TheoremId::Prop1 | TheoremId::Constants => unreachable!(),
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs every combination; individual failures become error records.
/// Output is sorted, so it does not depend on scheduling.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let jobs = jobs(config);
    let opts = config.options;

    #[cfg(feature = "parallel")]
    let nested: Vec<Vec<TheoremReport>> = jobs.par_iter().map(|j| j.run(&opts)).collect();
    #[cfg(not(feature = "parallel"))]
    let nested: Vec<Vec<TheoremReport>> = jobs.iter().map(|j| j.run(&opts)).collect();

    let mut records: Vec<TheoremReport> = nested.into_iter().flatten().collect();
    sort_records(&mut records);
    let summary = Summary::of(&records);
    Ok(SweepOutcome { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphas(v: &[f64]) -> Vec<Alpha> {
        v.iter().map(|&x| Alpha::new(x).unwrap()).collect()
    }

    fn funcs(v: &[&str]) -> Vec<GeneralizedFunction> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn ivs(v: &[(f64, f64)]) -> Vec<Interval> {
        v.iter().map(|&(a, b)| Interval::new(a, b).unwrap()).collect()
    }

    #[test]
    fn identity_grid_counts() {
        let config = SweepConfig {
            theorems: vec![TheoremId::Thm1, TheoremId::Thm2],
            alphas: alphas(&[0.3, 0.5, 0.7, 0.9, 1.0]),
            functions: funcs(&["poly:0,0,1", "poly:0,1,2", "poly:0,0,0,3"]),
            intervals: ivs(&[(0.0, 1.0), (1.0, 3.0)]),
            ..SweepConfig::default()
        };
        let out = run_sweep(&config).unwrap();
        assert_eq!(out.records.len(), 60);
        assert_eq!(out.summary.total, 60);
        assert_eq!(out.summary.satisfied + out.summary.violated, 60);
    }

    #[test]
    fn empty_lists_are_rejected() {
        let base = SweepConfig {
            theorems: vec![TheoremId::Thm1],
            alphas: alphas(&[1.0]),
            functions: funcs(&["poly:0,1"]),
            intervals: ivs(&[(0.0, 1.0)]),
            ..SweepConfig::default()
        };
        assert!(run_sweep(&base).is_ok());
        assert!(run_sweep(&SweepConfig { functions: vec![], ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { alphas: vec![], ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { intervals: vec![], ..base.clone() }).is_err());
        assert!(run_sweep(&SweepConfig { theorems: vec![], ..base.clone() }).is_err());
        let pq = SweepConfig { theorems: vec![TheoremId::Thm3], exponents: vec![], ..base };
        assert!(run_sweep(&pq).is_err());
    }

    #[test]
    fn nonconvex_thmd_is_not_a_violation() {
        let config = SweepConfig {
            theorems: vec![TheoremId::ThmD],
            alphas: alphas(&[1.0]),
            functions: funcs(&["poly:0,1,-1", "poly:0,0,1"]),
            intervals: ivs(&[(0.0, 1.0)]),
            options: VerifyOptions { convexity_grid: 17, ..VerifyOptions::default() },
            ..SweepConfig::default()
        };
        let out = run_sweep(&config).unwrap();
        assert_eq!(out.summary.precondition_failed, 1);
        assert_eq!(out.summary.satisfied, 1);
        assert_eq!(out.summary.exit_code(), 0);
    }

    #[test]
    fn holder_and_prop1_and_constants() {
        let config = SweepConfig {
            theorems: vec![TheoremId::Holder, TheoremId::Prop1, TheoremId::Constants, TheoremId::Convexity],
            alphas: alphas(&[0.5, 1.0]),
            functions: funcs(&["poly:0,1", "poly:2", "poly:0,1,1"]),
            intervals: ivs(&[(1.0, 2.0)]),
            n_values: vec![2, 3],
            options: VerifyOptions { convexity_grid: 17, ..VerifyOptions::default() },
            ..SweepConfig::default()
        };
        let out = run_sweep(&config).unwrap();
        let count = |t| out.records.iter().filter(|r| r.theorem == t).count();
        assert_eq!(count(TheoremId::Holder), 2 * 9);
        assert_eq!(count(TheoremId::Prop1), 2 * 2 * 2);
        assert_eq!(count(TheoremId::Constants), 2 * 5);
        assert_eq!(count(TheoremId::Convexity), 2 * 3);
        let non_monomial = out
            .records
            .iter()
            .filter(|r| r.theorem == TheoremId::Holder && r.function.contains("poly:0,1,1"))
            .all(|r| r.status == Status::Error);
        assert!(non_monomial);
        assert!(out.summary.errored > 0);
        assert_eq!(out.summary.exit_code(), 1);
    }

    #[test]
    fn order_is_deterministic() {
        let config = SweepConfig {
            theorems: vec![TheoremId::Thm2, TheoremId::Thm1],
            alphas: alphas(&[1.0, 0.5]),
            functions: funcs(&["poly:1,1", "poly:0,0,1"]),
            intervals: ivs(&[(1.0, 3.0), (0.0, 1.0)]),
            ..SweepConfig::default()
        };
        let a = run_sweep(&config).unwrap();
        let b = run_sweep(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records[0].theorem, TheoremId::Thm1);
        assert_eq!(a.records[0].alpha, 0.5);
        assert_eq!(a.records[0].function, "poly:0,0,1");
        assert_eq!(a.records[0].interval, (0.0, 1.0));
    }

    #[test]
    fn constants_table_rows() {
        let rows = constants_table(&alphas(&[0.5, 1.0]), Interval::new(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].kind, KernelKind::Eq32);
        assert!((rows[0].engine / rows[0].paper - 2f64.sqrt()).abs() < 1e-12);
        assert!((rows[5].engine - 1.0).abs() < 1e-14);
    }
}
