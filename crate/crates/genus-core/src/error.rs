//! Error type shared by the exact modules.
//!
//! Structural errors deserve emphasis: several of them ("resonance",
//! "vanishing-lemma violation", pole-order mismatches) are not plumbing
//! failures but computational falsifiers. If one ever fires on a valid input,
//! a mathematical claim the engine is built on has broken down, so each
//! carries enough context to reconstruct the offending quantity.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic extensions mix different radicands: sqrt({left}) vs sqrt({right})")]
    MismatchedRadicand { left: u32, right: u32 },

    #[error("{0} is not square-free")]
    NotSquareFree(u32),

    #[error("cannot add pi-scaled values with exponents {left}/2 and {right}/2")]
    PiExponentMismatch { left: i64, right: i64 },

    #[error("gamma argument must be a positive integer or half-integer, got {0}")]
    BadGammaArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("expected integer value, got {0}")]
    NotAnInteger(String),

    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },

    #[error("nu must be at least 2, got {0}")]
    BadNu(u32),

    #[error("{0}")]
    BadArgument(String),

    #[error("monomial symmetric polynomial needs at least {needed} arguments, got {got}")]
    TooFewArguments { needed: usize, got: usize },

    #[error("partition size must be odd, got {0}")]
    EvenPartitionSize(u32),

    #[error("partition length {len} exceeds the walk bound {max}")]
    PartitionTooLong { len: usize, max: usize },

    #[error("resonance: antiderivative hit a u^-1 term with coefficient {coefficient}")]
    Resonance { coefficient: String },

    #[error("vanishing-lemma violation at k={k}, n={n}: pole row m={m} has coefficient {value}")]
    VanishingLemma { k: u32, n: u32, m: u32, value: String },

    #[error("forcing term pole order {found} is weaker than the required {required} (g={g})")]
    ForcingPoleBound { g: u32, required: i64, found: i64 },

    #[error("forcing term carries z0-power {found}, expected {expected}")]
    ForcingPower { expected: i64, found: i64 },

    #[error("exact division failed: {context} leaves a nonzero remainder")]
    Divisibility { context: &'static str },

    #[error("u-pole order is {found}, structure requires exactly {expected}")]
    PoleOrder { expected: u32, found: u32 },

    #[error("partial-fraction row sum for g={g} is {value}, should vanish")]
    RowSum { g: u32, value: String },

    #[error("top partial-fraction coefficient for g={g} is {value}, should be positive")]
    TopCoefficient { g: u32, value: String },

    #[error("function has a pole at z0=1 where a finite value is required: {context}")]
    PoleAtOne { context: &'static str },

    #[error("logarithmic part survives in {context} where it must cancel")]
    SurvivingLog { context: &'static str },

    #[error("resonant series order m={m} has nonzero driver coefficient {value}")]
    ResonantDriver { m: usize, value: String },

    #[error("no rational fit for e_{g} within pole order {o_cap} and degree {d_cap}")]
    AnsatzSearch { g: u32, o_cap: u32, d_cap: u32 },

    #[error("series cross-check failed at order {m}: {left} vs {right}")]
    SeriesMismatch { m: usize, left: String, right: String },

    #[error("count paths disagree at g={g}, j={j}: recursion {recursion}, series {series}")]
    CountMismatch { g: u32, j: u32, recursion: String, series: String },

    #[error("count at g={g}, j={j} is not a nonnegative integer: {value}")]
    BadCount { g: u32, j: u32, value: String },

    #[error("two displayed forms disagree at g={g}: {left} vs {right}")]
    FormsDisagree { g: u32, left: String, right: String },

    #[error("pinning-constant relation {relation} fails")]
    PinningRelation { relation: &'static str },

    #[error("genus {g} exceeds the configured cap {cap}")]
    GenusCap { g: u32, cap: u32 },
}
