//! Symbolic-numeric verification of Hermite-Hadamard type inequalities for
//! local fractional integrals on fractal sets.
//!
//! Functions are α-polynomials Σ c_k x^(kα), scaled Mittag-Leffler functions
//! E_α((sx)^α) and piecewise term lists. All local fractional integrals are
//! evaluated in closed form through the term algebra in [`symterm`].

pub mod alpha;
pub mod convexity;
pub mod error;
pub mod hh_verify;
pub mod lf_funcs;
pub mod means;
pub mod report;
pub mod special;
pub mod sweep;
pub mod symterm;

pub use error::{Error, Result};
pub use hh_verify::{KernelKind, VerifyOptions};
pub use lf_funcs::{AlphaPoly, GeneralizedFunction, Interval, MittagLefflerExp};
pub use report::{Status, TheoremId, TheoremReport};
pub use special::Alpha;
pub use sweep::{run_sweep, SweepConfig, SweepOutcome, Summary};
