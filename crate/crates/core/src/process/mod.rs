//! Poisson configurations and the pathwise operators acting on them.

mod configuration;
mod operators;
mod registry;

pub use configuration::Configuration;
pub use operators::{
    difference_gradient, gradient_pairing, Deterministic, pathwise_integral, sample_configuration,
    skorohod_integral, verify_duality, DualityEstimates, Functional, RandomIntegrand,
};
pub use registry::{FunctionalSpec, IntegrandSpec, RegistryContext};
pub(crate) use registry::{coefficients_string, parse_coefficients};
