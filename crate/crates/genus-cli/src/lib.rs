//! Command-line front end for the genus-expansion engine: exact corrections,
//! map counts, asymptotic data, and the floating-point cross-check harness,
//! each rendered as JSON, CSV, or aligned text.

pub mod commands;
pub mod fixtures;
pub mod render;
pub mod validate;
