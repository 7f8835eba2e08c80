use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fractal order must satisfy 0 < alpha <= 1, got {0}")]
    InvalidAlpha(f64),

    #[error("gamma function evaluated outside its domain: x = {0} (need x > 0)")]
    GammaDomain(f64),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("zero-slope base with positive exponent {k} has no primitive in the term class")]
    DegenerateBase { k: u32 },

    #[error("base changes sign at t = {root} strictly inside [{lo}, {hi}]; split the interval first")]
    SignChange { root: f64, lo: f64, hi: f64 },

    #[error("by-parts reduction depth exceeded: p + q = {0} > 24")]
    DepthExceeded(u32),

    #[error("more than two distinct linear bases in a product term")]
    TooManyBases,

    #[error("invalid piecewise term list: {0}")]
    InvalidPieces(String),

    #[error("point x = {x} outside the recorded domain of {what}")]
    Domain { x: f64, what: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("exponents p = {p}, q = {q} are not conjugate with p, q > 1")]
    Exponent { p: f64, q: f64 },

    #[error("|f|^p leaves the term class: exponent {k} * {power} is not an integer")]
    ClassClosure { k: u32, power: f64 },

    #[error("mixed-sign derivative: |f^(alpha)| is not resolvable without splitting")]
    MixedSignDerivative,

    #[error("mean undefined: {0}")]
    MeanUndefined(String),

    #[error("cannot parse function literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("AlphaPoly degree {0} exceeds the supported maximum of 12")]
    DegreeTooHigh(usize),
}
