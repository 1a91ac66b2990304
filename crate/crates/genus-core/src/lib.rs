//! Exact engine for the genus expansion of Hermitian matrix models with a
//! single even vertex weight t*lambda^(2*nu).
//!
//! Everything in this crate is exact: rational arithmetic throughout, with
//! small quadratic-field and radical-monomial extensions where the asymptotic
//! constants need them. Floating point lives in the companion numerics crate.

pub mod combinatorics;
pub mod energy;
pub mod engine;
pub mod error;
pub mod exactnum;
pub mod hierarchy;
pub mod painleve;
pub mod symbolics;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
