//! Exact symbolic layer: polynomials and Laurent expansions in the variable
//! u = nu - (nu-1) z0, rational functions of z0 with poles only at z0 = 0 and
//! u = 0, and truncated power series in s for expansion cross-checks.

mod laurent;
mod poly;
mod ratz0;
mod series;

pub use laurent::{laurent_antiderivative_u, z0_power_to_u, LaurentU};
pub use poly::PolyQ;
pub use ratz0::{series_log_coefficient, u_poly, LogExtendedZ0, MonomialTerm, RationalZ0};
pub use series::{
    compose_log_extended, compose_rational, u_series, z0_series, PowerSeriesS,
};
