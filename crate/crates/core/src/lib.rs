//! Moments of Poisson stochastic integrals with random integrands.
//!
//! The crate evaluates the partition-sum expressions for
//! `E[F (∫ u_x(ω) ω(dx))^n]`, for the Skorohod integral `δ(u)` and for the
//! compensated integral, exactly where the integrands make this possible
//! and by Monte Carlo on simulated Poisson configurations otherwise.
//!
//! - [`combinatorics`]: set partitions, profiles, Stirling and Bell numbers,
//!   exact integer polynomials.
//! - [`measure`]: intensity measures on an interval, quadrature, sampling.
//! - [`process`]: configurations, pathwise and Skorohod integrals, the
//!   finite-difference gradient, and the registry of built-in integrands.
//! - [`moments`]: the moment identities and their reports.
//! - [`identities`]: specializations to Poisson counts.

pub mod combinatorics;
pub mod config;
pub mod error;
pub mod identities;
pub mod measure;
pub mod moments;
pub mod montecarlo;
pub mod process;

pub use config::SpaceConfig;
pub use error::{Error, Result};
pub use moments::{IdentityReport, Side, Verdict};
pub use montecarlo::{Estimate, MCParams};
