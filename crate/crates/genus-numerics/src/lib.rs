//! Floating-point validation harness for the exact engine: root-finding for
//! z0, numeric evaluation of the genus expansion, the equilibrium-measure
//! density, and orthogonal-polynomial recurrence coefficients computed from
//! first principles and compared against the expansion.
//!
//! Everything runs in software extended precision (default 200 bits); double
//! precision loses the game long before N reaches 50.

mod eqmeasure;
mod quad;
mod recurrence;
mod study;
mod z0eval;

pub use eqmeasure::{
    density_constructed, density_display, normalization, two_path_max_deviation,
};
pub use quad::{float_from_rat, QuadRule, DEFAULT_PRECISION};
pub use recurrence::{
    recurrence_stieltjes, string_forward, string_residual, Method, RecurrenceRun,
};
pub use study::{caustic_probe, convergence_study, CausticSample, ConvergenceReport};
pub use z0eval::{
    eval_log_extended, eval_rational_z0, genus_expansion_eval, z0_eval, ExpansionEval,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("s = {s} lies outside the real branch; the critical coupling is {s_c}")]
    Domain { s: String, s_c: String },

    #[error("iteration stalled after {iters} steps with residual {residual}")]
    NonConvergence { iters: u32, residual: String },

    #[error("precision loss in {context}; rerun with more than {prec} bits")]
    PrecisionLoss { context: &'static str, prec: u32 },

    #[error("forward recursion went negative; last stable index is {last_stable}")]
    Unstable { last_stable: u32 },

    #[error("{0}")]
    BadInput(String),

    #[error(transparent)]
    Core(#[from] genus_core::Error),
}

pub type Result<T> = std::result::Result<T, NumError>;
