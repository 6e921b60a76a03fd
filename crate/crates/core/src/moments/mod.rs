//! Moment identities for Poisson stochastic integrals: exact partition sums
//! for deterministic integrands, exact polynomial identities for integrands
//! that are polynomials of the total count, and Monte Carlo estimators for
//! both sides of the random-integrand identities.

mod compensated;
mod deterministic;
mod random;
mod report;
mod sampling;
mod skorohod;

pub use compensated::{compensated_moment_identity, compensated_moment_lhs, compensated_moment_rhs};
pub use deterministic::{
    centered_from_power_integrals, centered_moment_deterministic, moment_deterministic,
    moment_from_power_integrals, DeterministicMoment,
};
pub use random::{
    count_integrand_exact, moment_random_lhs, moment_random_rhs, random_moment_exact,
    random_moment_identity, PartitionSumEstimate,
};
pub use report::{ExactPolynomials, IdentityReport, Side, TermReport, Tolerance, Verdict};
pub use skorohod::{skorohod_identity, skorohod_moment_lhs, skorohod_moment_rhs};

use crate::error::{Error, Result};

/// Largest moment order accepted by partition-sum evaluations
/// (B(10) = 115 975 partitions).
pub const MAX_PARTITION_ORDER: usize = 10;

fn check_order(n: usize) -> Result<()> {
    if n > MAX_PARTITION_ORDER {
        return Err(Error::EnumerationTooLarge {
            n,
            cap: MAX_PARTITION_ORDER,
        });
    }
    Ok(())
}
