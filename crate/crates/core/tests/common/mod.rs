//! Shared generators and the classical quadrature oracle.
#![allow(dead_code)]

use lfhh::symterm::{LinForm, PowTerm};
use lfhh::AlphaPoly;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adaptive double-exponential quadrature of a smooth integrand.
pub fn quad(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    quadrature::double_exponential::integrate(f, lo, hi, 1e-14).integral
}

/// Classical value of the term at α = 1 (plain products of linear forms).
pub fn classical(term: &PowTerm, t: f64) -> f64 {
    let pow = |base: LinForm, k: u32| base.eval(t).powi(k as i32);
    term.coeff * pow(term.first.base, term.first.exp) * pow(term.second.base, term.second.exp)
}

fn slope(r: &mut impl Rng) -> f64 {
    let s: f64 = r.gen_range(0.25..3.0);
    if r.gen_bool(0.5) {
        -s
    } else {
        s
    }
}

/// A random two-form term with exponents ≤ 4 and an interval on which both
/// bases keep their sign.
pub fn random_term(r: &mut impl Rng) -> (PowTerm, f64, f64) {
    loop {
        let f1 = LinForm::new(slope(r), r.gen_range(-3.0..3.0));
        let f2 = LinForm::new(slope(r), r.gen_range(-3.0..3.0));
        let term = PowTerm::product(r.gen_range(-3.0..3.0), f1, r.gen_range(0..=4), f2, r.gen_range(0..=4));
        let lo: f64 = r.gen_range(-4.0..4.0);
        let hi = lo + r.gen_range(0.1..2.5);
        let inside = |b: LinForm| b.root().is_some_and(|x| x > lo - 1e-3 && x < hi + 1e-3);
        if !inside(f1) && !inside(f2) {
            return (term, lo, hi);
        }
    }
}

pub fn random_poly(r: &mut impl Rng, max_degree: usize, nonneg: bool) -> AlphaPoly {
    let deg = r.gen_range(1..=max_degree);
    let lo = if nonneg { 0.0 } else { -3.0 };
    let coeffs = (0..=deg).map(|_| (r.gen_range(lo..3.0f64) * 4.0).round() / 4.0).collect();
    AlphaPoly::new(coeffs).unwrap()
}

pub fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}
