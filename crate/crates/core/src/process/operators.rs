use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::combinatorics::IntegerPolynomial;
use crate::error::{Error, Result};
use crate::measure::{DeterministicIntegrand, Interval, MeasureSpace};
use crate::montecarlo::{estimate_vector, Estimate, MCParams};
use crate::process::Configuration;

/// A random process `u: Ω × X -> R`, zero outside its support.
pub trait RandomIntegrand: Send + Sync {
    fn eval(&self, x: f64, omega: &Configuration) -> f64;

    /// Compact support in `X`; `None` means the whole space.
    fn support(&self) -> Option<Interval> {
        None
    }

    /// `∫_X u(x, ω) σ(dx)`.
    fn compensator(&self, space: &MeasureSpace, omega: &Configuration) -> f64 {
        space.integrate_fn(self.support(), |x| self.eval(x, omega))
    }

    /// `g` when `u(x, ω) = g(ω(X))` for every `x` in the space. Enables the
    /// exact (polynomial in `λ`) evaluation of moment identities.
    fn count_polynomial(&self) -> Option<IntegerPolynomial> {
        None
    }
}

/// A random variable `F: Ω -> R`.
pub trait Functional: Send + Sync {
    fn eval(&self, omega: &Configuration) -> f64;

    /// `h` when `F(ω) = h(ω(X))`.
    fn count_polynomial(&self) -> Option<IntegerPolynomial> {
        None
    }
}

impl<F: Fn(&Configuration) -> f64 + Send + Sync> Functional for F {
    fn eval(&self, omega: &Configuration) -> f64 {
        self(omega)
    }
}

impl<F: Fn(f64, &Configuration) -> f64 + Send + Sync> RandomIntegrand for F {
    fn eval(&self, x: f64, omega: &Configuration) -> f64 {
        self(x, omega)
    }
}

/// Lifts a deterministic function to a random integrand ignoring `ω`.
pub struct Deterministic<D>(pub D);

impl<D: DeterministicIntegrand> RandomIntegrand for Deterministic<D> {
    fn eval(&self, x: f64, _omega: &Configuration) -> f64 {
        self.0.eval(x)
    }

    fn support(&self) -> Option<Interval> {
        self.0.support()
    }
}

/// Draws `ω` from the Poisson measure with intensity `σ`.
pub fn sample_configuration<R: Rng + ?Sized>(space: &MeasureSpace, rng: &mut R) -> Configuration {
    let lambda = space.total_mass();
    if lambda <= 0.0 {
        return Configuration::empty();
    }
    let count = Poisson::new(lambda)
        .expect("finite positive intensity")
        .sample(rng) as usize;
    let mut omega = Configuration::from_points_unchecked(Vec::with_capacity(count));
    while omega.len() < count {
        let x = space.sample_point(rng).expect("positive mass");
        // a repeated point has probability zero under a diffuse σ; redraw it
        omega.insert(x);
    }
    omega
}

/// `∫_X u_x(ω) ω(dx) = Σ_{x ∈ ω} u(x, ω)`.
pub fn pathwise_integral(u: &dyn RandomIntegrand, omega: &Configuration) -> f64 {
    omega.points().iter().map(|&x| u.eval(x, omega)).sum()
}

/// `δ(u)(ω) = Σ_{x ∈ ω} u(x, ω \ x) - ∫_X u(x, ω) σ(dx)`.
pub fn skorohod_integral(
    u: &dyn RandomIntegrand,
    omega: &Configuration,
    space: &MeasureSpace,
) -> Result<f64> {
    let jumps: f64 = (0..omega.len())
        .map(|i| u.eval(omega.points()[i], &omega.without_index(i)))
        .sum();
    let compensator = u.compensator(space, omega);
    let value = jumps - compensator;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!(
            "Skorohod integral: jumps {jumps}, compensator {compensator}"
        )))
    }
}

/// `D_x F(ω) = F(ω ∪ {x}) - F(ω)`.
pub fn difference_gradient(f: &dyn Functional, x: f64, omega: &Configuration) -> f64 {
    f.eval(&omega.add_points(&[x])) - f.eval(omega)
}

/// `<DF, u>_{L²(σ)}(ω) = ∫_X D_x F(ω) u(x, ω) σ(dx)`, by quadrature over
/// the support of `u`.
pub fn gradient_pairing(
    f: &dyn Functional,
    u: &dyn RandomIntegrand,
    omega: &Configuration,
    space: &MeasureSpace,
) -> f64 {
    let base = f.eval(omega);
    let mut scratch = omega.clone();
    let len = omega.len();
    space.integrate_fn(u.support(), |x| {
        let ux = u.eval(x, omega);
        if ux == 0.0 {
            return 0.0;
        }
        let added = scratch.insert(x);
        let shifted = f.eval(&scratch);
        if added {
            scratch.truncate(len);
        }
        (shifted - base) * ux
    })
}

/// Both sides of `E[<DF, u>] = E[F δ(u)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityEstimates {
    /// `E[<DF, u>_{L²(σ)}]`
    pub gradient_side: Estimate,
    /// `E[F δ(u)]`
    pub skorohod_side: Estimate,
}

impl DualityEstimates {
    pub fn agree(&self, multiplier: f64) -> bool {
        self.gradient_side.agrees_with(&self.skorohod_side, multiplier)
    }
}

/// Monte Carlo check of the duality between `D` and `δ`. Both sides use the
/// same configuration in each replicate.
pub fn verify_duality(
    f: &dyn Functional,
    u: &dyn RandomIntegrand,
    space: &MeasureSpace,
    mc: &MCParams,
) -> Result<DualityEstimates> {
    let est = estimate_vector(mc, 2, |rng, out| {
        let omega = sample_configuration(space, rng);
        out[0] = gradient_pairing(f, u, &omega, space);
        out[1] = f.eval(&omega) * skorohod_integral(u, &omega, space)?;
        Ok(())
    })?;
    Ok(DualityEstimates {
        gradient_side: est[0],
        skorohod_side: est[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{estimate_scalar, replicate_stream};

    fn count(omega: &Configuration) -> f64 {
        omega.len() as f64
    }

    #[test]
    fn zero_intensity_gives_empty_configurations() {
        let space = MeasureSpace::uniform(0.0, 1.0, 0.0).unwrap();
        let mut rng = replicate_stream(1, 0);
        for _ in 0..10 {
            assert!(sample_configuration(&space, &mut rng).is_empty());
        }
    }

    #[test]
    fn poisson_counts() {
        let space = MeasureSpace::uniform(0.0, 1.0, 2.0).unwrap();
        let mc = MCParams::new(100_000, 3).unwrap();
        let mean = estimate_scalar(&mc, |rng| Ok(sample_configuration(&space, rng).len() as f64))
            .unwrap();
        assert!(mean.agrees_with_value(2.0, 3.0), "{mean:?}");
        // variance: E[(N - 2)^2] = 2
        let var = estimate_scalar(&mc, |rng| {
            Ok((sample_configuration(&space, rng).len() as f64 - 2.0).powi(2))
        })
        .unwrap();
        assert!(var.agrees_with_value(2.0, 3.0), "{var:?}");
    }

    #[test]
    fn disjoint_counts_are_uncorrelated() {
        let space = MeasureSpace::uniform(0.0, 1.0, 3.0).unwrap();
        let a = Interval::new(0.0, 0.4).unwrap();
        let b = Interval::new(0.4, 1.0).unwrap();
        let (la, lb) = (space.measure_of(&a), space.measure_of(&b));
        let mc = MCParams::new(100_000, 8).unwrap();
        // E[(N_A - λ_A)(N_B - λ_B)] = 0
        let cov = estimate_scalar(&mc, |rng| {
            let omega = sample_configuration(&space, rng);
            Ok((omega.count_in(&a) as f64 - la) * (omega.count_in(&b) as f64 - lb))
        })
        .unwrap();
        assert!(cov.agrees_with_value(0.0, 3.0), "{cov:?}");
    }

    #[test]
    fn pathwise_examples() {
        let omega = Configuration::new(vec![0.1, 0.3, 0.8]).unwrap();
        let a = Interval::new(0.0, 0.5).unwrap();
        let indicator = move |x: f64, _: &Configuration| if a.contains(x) { 1.0 } else { 0.0 };
        assert_eq!(pathwise_integral(&indicator, &Configuration::empty()), 0.0);
        assert_eq!(pathwise_integral(&indicator, &omega), omega.count_in(&a) as f64);
        let total = |_x: f64, w: &Configuration| w.len() as f64;
        assert_eq!(pathwise_integral(&total, &omega), 9.0);
    }

    #[test]
    fn skorohod_of_deterministic_is_compensated_sum() {
        let space = MeasureSpace::uniform(0.0, 1.0, 2.0).unwrap();
        let f = |x: f64, _: &Configuration| x * x;
        let omega = Configuration::new(vec![0.25, 0.5]).unwrap();
        let integral = space.integrate_fn(None, |x| x * x);
        let got = skorohod_integral(&f, &omega, &space).unwrap();
        assert!((got - (pathwise_integral(&f, &omega) - integral)).abs() < 1e-14);
        let empty = skorohod_integral(&f, &Configuration::empty(), &space).unwrap();
        assert!((empty + 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn skorohod_removes_the_point_itself() {
        // u(x, ω) = ω(X): δ(u) = Σ_x (ω(X) - 1) - λ ω(X)
        let space = MeasureSpace::uniform(0.0, 1.0, 1.5).unwrap();
        let u = |_x: f64, w: &Configuration| w.len() as f64;
        let omega = Configuration::new(vec![0.1, 0.2, 0.3]).unwrap();
        let got = skorohod_integral(&u, &omega, &space).unwrap();
        assert!((got - (3.0 * 2.0 - 1.5 * 3.0)).abs() < 1e-12);
    }

    #[test]
    fn gradient_examples() {
        let omega = Configuration::new(vec![0.1, 0.7]).unwrap();
        let constant = |_: &Configuration| 4.0;
        assert_eq!(difference_gradient(&constant, 0.3, &omega), 0.0);
        assert_eq!(difference_gradient(&count, 0.3, &omega), 1.0);
        assert_eq!(difference_gradient(&count, 0.7, &omega), 0.0);
        let a = Interval::new(0.0, 0.5).unwrap();
        let square = move |w: &Configuration| (w.count_in(&a) as f64).powi(2);
        // ω(A) = 1 -> D = 2 ω(A) + 1 = 3
        assert_eq!(difference_gradient(&square, 0.2, &omega), 3.0);
    }

    #[test]
    fn gradient_pairing_of_count_with_indicator() {
        let space = MeasureSpace::uniform(0.0, 1.0, 2.0).unwrap();
        let a = Interval::new(0.0, 0.5).unwrap();
        let f = move |w: &Configuration| w.count_in(&a) as f64;
        let u = Deterministic(crate::measure::Supported { f: |_x: f64| 1.0, support: a });
        let omega = Configuration::new(vec![0.1, 0.9]).unwrap();
        let got = gradient_pairing(&f, &u, &omega, &space);
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mecke_formula_for_a_random_integrand() {
        // E[Σ_{x∈ω} u(x, ω)] = ∫ E[u(s, ω ∪ {s})] σ(ds) with u(x, ω) = x ω(X)
        let space = MeasureSpace::uniform(0.0, 1.0, 1.5).unwrap();
        let u = |x: f64, w: &Configuration| x * w.len() as f64;
        let mc = MCParams::new(100_000, 21).unwrap();
        let est = estimate_vector(&mc, 2, |rng, out| {
            let omega = sample_configuration(&space, rng);
            out[0] = pathwise_integral(&u, &omega);
            let s = space.sample_point(rng)?;
            out[1] = space.total_mass() * u.eval(s, &omega.add_points(&[s]));
            Ok(())
        })
        .unwrap();
        assert!(est[0].agrees_with(&est[1], 3.0), "{est:?}");
        // closed form: λ E[s] E[N + 1] = 1.5 * 0.5 * 2.5
        assert!(est[0].agrees_with_value(1.875, 3.0));
    }

    #[test]
    fn duality_with_constant_functional() {
        let space = MeasureSpace::uniform(0.0, 1.0, 2.0).unwrap();
        let b = Interval::new(0.5, 1.0).unwrap();
        let u = move |x: f64, w: &Configuration| {
            if x < 0.5 {
                w.count_in(&b) as f64
            } else {
                0.0
            }
        };
        let one = |_: &Configuration| 1.0;
        let mc = MCParams::new(20_000, 5).unwrap();
        let d = verify_duality(&one, &u, &space, &mc).unwrap();
        assert_eq!(d.gradient_side.mean, 0.0);
        assert!(d.skorohod_side.agrees_with_value(0.0, 3.0), "{d:?}");
    }
}
