//! Exact counting of set partitions, partition profiles, Stirling and Bell
//! quantities. Everything here is arbitrary-precision integer arithmetic.

mod coefficient;
mod partition;
mod polynomial;
mod profile;
mod stirling;

pub use coefficient::{
    coefficient_c, coefficient_c_trailing, coefficient_c_ordered,
    coefficient_c_ordered_trailing,
};
pub use partition::{
    enumerate_set_partitions, enumerate_set_partitions_with_cap, SetPartition, SetPartitions,
    DEFAULT_ENUMERATION_CAP,
};
pub use polynomial::IntegerPolynomial;
pub use profile::{profile_count, profiles, profiles_with_min_part, PartitionProfile};
pub use stirling::{
    bell_number, bell_polynomial, binomial, factorial, poisson_expectation, stirling2,
    stirling2_no_singletons, stirling2_table, stirling_from_compositions,
};
