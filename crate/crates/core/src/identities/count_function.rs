use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{poisson_expectation, IntegerPolynomial};
use crate::error::{Error, Result};
use crate::process::{coefficients_string, parse_coefficients};

use super::series::{poisson_series, SeriesSum, Truncation};

/// A function `f: ℕ -> ℝ` applied to a Poisson count.
///
/// Identifiers: `poly:c0,c1,...` for `c0 + c1 z + ...` with integer
/// coefficients, and `exp:θ` for `e^{θ z}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CountFunctionSpec {
    Polynomial { coefficients: IntegerPolynomial },
    Exponential { rate: f64 },
}

impl CountFunctionSpec {
    pub fn polynomial(p: IntegerPolynomial) -> Self {
        CountFunctionSpec::Polynomial { coefficients: p }
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !rate.is_finite() {
            return Err(Error::InvalidParameter(format!("exponential rate {rate} is not finite")));
        }
        Ok(CountFunctionSpec::Exponential { rate })
    }

    pub fn eval(&self, z: u64) -> f64 {
        match self {
            CountFunctionSpec::Polynomial { coefficients } => coefficients.eval_f64(z as f64),
            CountFunctionSpec::Exponential { rate } => (rate * z as f64).exp(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&IntegerPolynomial> {
        match self {
            CountFunctionSpec::Polynomial { coefficients } => Some(coefficients),
            CountFunctionSpec::Exponential { .. } => None,
        }
    }

    /// `E[f(Z + k)]` for `Z ~ Poisson(λ)`: exact through Bell polynomials
    /// for polynomials, a truncated series otherwise.
    pub fn shifted_expectation(&self, lambda: f64, k: u64, truncation: Truncation) -> Result<SeriesSum> {
        match self {
            CountFunctionSpec::Polynomial { coefficients } => {
                let value = poisson_expectation(&coefficients.shift(k as i64)).eval_f64(lambda);
                Ok(SeriesSum::exact(value))
            }
            CountFunctionSpec::Exponential { .. } => {
                poisson_series(lambda, 0.0, truncation, |z| Ok(self.eval(z + k)))
            }
        }
    }
}

impl fmt::Display for CountFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountFunctionSpec::Polynomial { coefficients } => {
                write!(f, "poly:{}", coefficients_string(coefficients))
            }
            CountFunctionSpec::Exponential { rate } => write!(f, "exp:{rate}"),
        }
    }
}

impl FromStr for CountFunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("poly", params)) => Ok(Self::polynomial(parse_coefficients(params)?)),
            Some(("exp", rate)) => {
                let rate: f64 = rate
                    .trim()
                    .parse()
                    .map_err(|e| Error::Config(format!("bad exponential rate {rate:?}: {e}")))?;
                Self::exponential(rate)
            }
            _ => Err(Error::Config(format!(
                "unknown count function {s:?}; expected poly:c0,c1,... or exp:rate"
            ))),
        }
    }
}
