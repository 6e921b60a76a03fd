//! Specializations to indicator integrands, where `∫ 1_A dω = Z` is a
//! Poisson count: Stirling-weighted shifted expectations, the exponential
//! decomposition, covariances with powers of `Z`, and centered moments.

mod count_function;
mod covariance;
mod indicator;
mod series;

pub use count_function::CountFunctionSpec;
pub use covariance::covariance_identity;
pub use indicator::{
    centered_poisson_moment, centered_poisson_polynomial, exponential_identity, exponential_rhs,
    stirling_moment_identity, stirling_moment_polynomials, EXPONENTIAL_TOLERANCE,
    STIRLING_TOLERANCE,
};
pub use series::{poisson_series, truncated_sum, SeriesSum, Truncation, MAX_TERMS};
