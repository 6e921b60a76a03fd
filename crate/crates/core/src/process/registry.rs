//! Built-in integrands and functionals, addressable by identifier.
//!
//! | integrand id             | `u(x, ω)`                              |
//! |--------------------------|----------------------------------------|
//! | `indicator`              | `1_A(x)` (`A` = whole space if unset)  |
//! | `linear`                 | `x 1_A(x)`                             |
//! | `count`                  | `ω(X)`                                 |
//! | `count-times-f`          | `ω(B) 1_A(x)`                          |
//! | `poly-of-count:c0,c1,..` | `c0 + c1 ω(X) + ...` (integer coeffs)  |
//!
//! | functional id            | `F(ω)`                                 |
//! |--------------------------|----------------------------------------|
//! | `one`                    | `1`                                    |
//! | `count` / `count:A` / `count:B` | `ω(X)` / `ω(A)` / `ω(B)`        |
//! | `count-squared[:A|:B]`   | the square of the above               |
//! | `poly-of-count:c0,c1,..` | `c0 + c1 ω(X) + ...`                   |

use std::fmt;

use num_bigint::BigInt;

use crate::combinatorics::IntegerPolynomial;
use crate::error::{Error, Result};
use crate::measure::{DeterministicIntegrand, Interval, MeasureSpace};
use crate::process::{Configuration, Functional, RandomIntegrand};

/// Sets referenced by registry identifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegistryContext {
    pub domain: Interval,
    /// `A`; defaults depend on the identifier.
    pub a: Option<Interval>,
    /// `B`; defaults to the upper half of the domain.
    pub b: Option<Interval>,
}

impl RegistryContext {
    pub fn new(domain: Interval) -> Self {
        Self {
            domain,
            a: None,
            b: None,
        }
    }

    pub fn with_a(mut self, a: Interval) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: Interval) -> Self {
        self.b = Some(b);
        self
    }

    fn lower_half(&self) -> Interval {
        let mid = 0.5 * (self.domain.lo() + self.domain.hi());
        Interval::new(self.domain.lo(), mid).expect("ordered endpoints")
    }

    fn upper_half(&self) -> Interval {
        let mid = 0.5 * (self.domain.lo() + self.domain.hi());
        Interval::new(mid, self.domain.hi()).expect("ordered endpoints")
    }

    fn a_or_lower_half(&self) -> Interval {
        self.a.unwrap_or_else(|| self.lower_half())
    }

    fn b_or_upper_half(&self) -> Interval {
        self.b.unwrap_or_else(|| self.upper_half())
    }
}

pub(crate) fn parse_coefficients(params: &str) -> Result<IntegerPolynomial> {
    let coeffs = params
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Config(format!("bad integer coefficient {c:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerPolynomial::new(coeffs))
}

pub(crate) fn coefficients_string(poly: &IntegerPolynomial) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    poly.coefficients()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Built-in random integrands.
#[derive(Debug, Clone, PartialEq)]
pub enum IntegrandSpec {
    /// `1_A(x)`; `None` is the whole space.
    Indicator { region: Option<Interval> },
    /// `x 1_A(x)`.
    Linear { region: Option<Interval> },
    /// `ω(X)`.
    Count,
    /// `ω(B) 1_A(x)`.
    CountTimesIndicator { a: Interval, b: Interval },
    /// `g(ω(X))`.
    PolyOfCount { poly: IntegerPolynomial },
}

impl IntegrandSpec {
    pub const IDENTIFIERS: [&'static str; 5] =
        ["indicator", "linear", "count", "count-times-f", "poly-of-count"];

    pub fn parse(id: &str, ctx: &RegistryContext) -> Result<Self> {
        let (name, params) = match id.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (id.trim(), None),
        };
        let spec = match (name, params) {
            ("indicator", None) => IntegrandSpec::Indicator { region: ctx.a },
            ("linear", None) => IntegrandSpec::Linear { region: ctx.a },
            ("count", None) => IntegrandSpec::Count,
            ("count-times-f", None) => IntegrandSpec::CountTimesIndicator {
                a: ctx.a_or_lower_half(),
                b: ctx.b_or_upper_half(),
            },
            ("poly-of-count", Some(p)) => IntegrandSpec::PolyOfCount {
                poly: parse_coefficients(p)?,
            },
            _ => {
                return Err(Error::Config(format!(
                    "unknown integrand {id:?}; expected one of {:?}",
                    Self::IDENTIFIERS
                )))
            }
        };
        Ok(spec)
    }

    /// The deterministic view, for integrands that ignore `ω`.
    pub fn as_deterministic(&self) -> Option<&dyn DeterministicIntegrand> {
        match self {
            IntegrandSpec::Indicator { .. } | IntegrandSpec::Linear { .. } => Some(self),
            _ => None,
        }
    }

    fn region(&self) -> Option<Interval> {
        match self {
            IntegrandSpec::Indicator { region } | IntegrandSpec::Linear { region } => *region,
            IntegrandSpec::CountTimesIndicator { a, .. } => Some(*a),
            _ => None,
        }
    }

    fn in_region(&self, x: f64) -> bool {
        self.region().is_none_or(|r| r.contains(x))
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrandSpec::Indicator { region: None } => write!(f, "indicator"),
            IntegrandSpec::Indicator { region: Some(a) } => write!(f, "indicator on {a}"),
            IntegrandSpec::Linear { region: None } => write!(f, "linear"),
            IntegrandSpec::Linear { region: Some(a) } => write!(f, "linear on {a}"),
            IntegrandSpec::Count => write!(f, "count"),
            IntegrandSpec::CountTimesIndicator { a, b } => {
                write!(f, "count-times-f (A = {a}, B = {b})")
            }
            IntegrandSpec::PolyOfCount { poly } => {
                write!(f, "poly-of-count:{}", coefficients_string(poly))
            }
        }
    }
}

impl DeterministicIntegrand for IntegrandSpec {
    fn eval(&self, x: f64) -> f64 {
        RandomIntegrand::eval(self, x, &Configuration::empty())
    }

    fn support(&self) -> Option<Interval> {
        self.region()
    }
}

impl RandomIntegrand for IntegrandSpec {
    fn eval(&self, x: f64, omega: &Configuration) -> f64 {
        if !self.in_region(x) {
            return 0.0;
        }
        match self {
            IntegrandSpec::Indicator { .. } => 1.0,
            IntegrandSpec::Linear { .. } => x,
            IntegrandSpec::Count => omega.len() as f64,
            IntegrandSpec::CountTimesIndicator { b, .. } => omega.count_in(b) as f64,
            IntegrandSpec::PolyOfCount { poly } => poly.eval_f64(omega.len() as f64),
        }
    }

    fn support(&self) -> Option<Interval> {
        self.region()
    }

    fn compensator(&self, space: &MeasureSpace, omega: &Configuration) -> f64 {
        let mass = |region: Option<Interval>| {
            region.map_or(space.total_mass(), |r| space.measure_of(&r))
        };
        match self {
            IntegrandSpec::Indicator { region } => mass(*region),
            IntegrandSpec::Linear { region } => space.integrate_fn(*region, |x| x),
            IntegrandSpec::Count => omega.len() as f64 * space.total_mass(),
            IntegrandSpec::CountTimesIndicator { a, b } => {
                omega.count_in(b) as f64 * space.measure_of(a)
            }
            IntegrandSpec::PolyOfCount { poly } => {
                poly.eval_f64(omega.len() as f64) * space.total_mass()
            }
        }
    }

    fn count_polynomial(&self) -> Option<IntegerPolynomial> {
        match self {
            IntegrandSpec::Indicator { region: None } => Some(IntegerPolynomial::one()),
            IntegrandSpec::Count => Some(IntegerPolynomial::x()),
            IntegrandSpec::PolyOfCount { poly } => Some(poly.clone()),
            _ => None,
        }
    }
}

/// Built-in functionals.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalSpec {
    One,
    /// `ω(A)`; `None` is `ω(X)`.
    Count { region: Option<Interval> },
    /// `ω(A)^2`; `None` is `ω(X)^2`.
    CountSquared { region: Option<Interval> },
    /// `h(ω(X))`.
    PolyOfCount { poly: IntegerPolynomial },
}

impl FunctionalSpec {
    pub const IDENTIFIERS: [&'static str; 4] = ["one", "count", "count-squared", "poly-of-count"];

    pub fn parse(id: &str, ctx: &RegistryContext) -> Result<Self> {
        let (name, params) = match id.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (id.trim(), None),
        };
        let region = |p: Option<&str>| -> Result<Option<Interval>> {
            match p {
                None => Ok(None),
                Some("A") => Ok(Some(ctx.a_or_lower_half())),
                Some("B") => Ok(Some(ctx.b_or_upper_half())),
                Some(other) => other.parse().map(Some),
            }
        };
        let spec = match name {
            "one" if params.is_none() => FunctionalSpec::One,
            "count" => FunctionalSpec::Count {
                region: region(params)?,
            },
            "count-squared" => FunctionalSpec::CountSquared {
                region: region(params)?,
            },
            "poly-of-count" if params.is_some() => FunctionalSpec::PolyOfCount {
                poly: parse_coefficients(params.unwrap_or_default())?,
            },
            _ => {
                return Err(Error::Config(format!(
                    "unknown functional {id:?}; expected one of {:?}",
                    Self::IDENTIFIERS
                )))
            }
        };
        Ok(spec)
    }

    fn count(region: &Option<Interval>, omega: &Configuration) -> f64 {
        match region {
            Some(r) => omega.count_in(r) as f64,
            None => omega.len() as f64,
        }
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalSpec::One => write!(f, "one"),
            FunctionalSpec::Count { region: None } => write!(f, "count"),
            FunctionalSpec::Count { region: Some(r) } => write!(f, "count on {r}"),
            FunctionalSpec::CountSquared { region: None } => write!(f, "count-squared"),
            FunctionalSpec::CountSquared { region: Some(r) } => write!(f, "count-squared on {r}"),
            FunctionalSpec::PolyOfCount { poly } => {
                write!(f, "poly-of-count:{}", coefficients_string(poly))
            }
        }
    }
}

impl Functional for FunctionalSpec {
    fn eval(&self, omega: &Configuration) -> f64 {
        match self {
            FunctionalSpec::One => 1.0,
            FunctionalSpec::Count { region } => Self::count(region, omega),
            FunctionalSpec::CountSquared { region } => Self::count(region, omega).powi(2),
            FunctionalSpec::PolyOfCount { poly } => poly.eval_f64(omega.len() as f64),
        }
    }

    fn count_polynomial(&self) -> Option<IntegerPolynomial> {
        match self {
            FunctionalSpec::One => Some(IntegerPolynomial::one()),
            FunctionalSpec::Count { region: None } => Some(IntegerPolynomial::x()),
            FunctionalSpec::CountSquared { region: None } => Some(IntegerPolynomial::monomial(1, 2)),
            FunctionalSpec::PolyOfCount { poly } => Some(poly.clone()),
            _ => None,
        }
    }
}
