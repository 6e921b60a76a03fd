use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::report::{ExactPolynomials, IdentityReport, Side, TermReport, Tolerance};
use super::sampling::{self, TermSpec};
use super::check_order;
use crate::combinatorics::{
    binomial, bell_polynomial, poisson_expectation, profiles, stirling2, IntegerPolynomial,
};
use crate::error::{Error, Result};
use crate::measure::MeasureSpace;
use crate::montecarlo::{estimate_scalar, Estimate, MCParams};
use crate::process::{pathwise_integral, sample_configuration, Configuration, Functional, RandomIntegrand};

/// Monte Carlo estimate of a weighted partition sum with its terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionSumEstimate {
    pub total: Estimate,
    pub terms: Vec<TermReport>,
}

/// `E[F (∫ u_x(ω) ω(dx))^n]`.
pub fn moment_random_lhs(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<Estimate> {
    estimate_scalar(mc, |rng| {
        let omega = sample_configuration(space, rng);
        Ok(random_lhs_value(u, f, n, &omega))
    })
}

fn random_lhs_value(u: &dyn RandomIntegrand, f: &dyn Functional, n: usize, omega: &Configuration) -> f64 {
    f.eval(omega) * pathwise_integral(u, omega).powi(n as i32)
}

fn random_specs(n: usize) -> Vec<(TermSpec, Vec<usize>)> {
    profiles(n)
        .into_iter()
        .map(|p| {
            let spec = TermSpec {
                label: p.to_string(),
                weight: p.count().to_f64().unwrap_or(f64::INFINITY),
                points: p.parts(),
            };
            (spec, p.sizes().to_vec())
        })
        .collect()
}

/// `ε⁺_{s} (F u_{s_1}^{l_1} ... u_{s_k}^{l_k})`.
fn random_term_value(
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    sizes: &[usize],
    omega: &Configuration,
    s: &[f64],
) -> f64 {
    let shifted = omega.add_points(s);
    let mut value = f.eval(&shifted);
    for (&x, &l) in s.iter().zip(sizes) {
        value *= u.eval(x, &shifted).powi(l as i32);
    }
    value
}

fn run_random(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
    with_lhs: bool,
) -> Result<sampling::SumOutcome> {
    check_order(n)?;
    let (specs, sizes): (Vec<_>, Vec<_>) = random_specs(n).into_iter().unzip();
    let lhs = |omega: &Configuration| Ok(random_lhs_value(u, f, n, omega));
    sampling::run(
        space,
        mc,
        &specs,
        with_lhs.then_some(&lhs as _),
        |i, omega, s| Ok(random_term_value(u, f, &sizes[i], omega, s)),
    )
}

/// Right side of the random-integrand moment identity: one term per
/// partition profile, `N_profile λ^k E[ε⁺_{s} (F ∏ u_{s_i}^{l_i})]`.
pub fn moment_random_rhs(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<PartitionSumEstimate> {
    let out = run_random(space, u, f, n, mc, false)?;
    Ok(PartitionSumEstimate {
        total: out.total,
        terms: out.terms,
    })
}

/// Both sides as polynomials in `λ` when `u = g(ω(X))` and `F = h(ω(X))`:
/// `E[h(Z) (Z g(Z))^n]` against `Σ N_profile λ^k E[h(Z+k) g(Z+k)^n]`.
///
/// Returns `None` if either argument has no count-polynomial form.
pub fn random_moment_exact(
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
) -> Result<Option<ExactPolynomials>> {
    check_order(n)?;
    let (Some(g), Some(h)) = (u.count_polynomial(), f.count_polynomial()) else {
        return Ok(None);
    };
    let lhs = poisson_expectation(&(&h * &(IntegerPolynomial::x() * g.clone()).pow(n)));
    let integrand = &h * &g.pow(n);
    let rhs = profiles(n)
        .iter()
        .map(|p| {
            let k = p.parts();
            let shifted = poisson_expectation(&integrand.shift(k as i64));
            IntegerPolynomial::monomial(BigInt::from(p.count()), k) * shifted
        })
        .sum();
    Ok(Some(ExactPolynomials::new(lhs, rhs)))
}

/// `Σ_k S(n,k) λ^k E[(Z+k)^n]` with `E[(Z+k)^n] = Σ_j C(n,j) k^{n-j} B_j(λ)`,
/// i.e. the right side for `u_x(ω) = ω(X)` and `F = 1`. Must equal
/// `B_{2n}(λ)`; anything else is reported as an identity violation.
pub fn count_integrand_exact(n: usize) -> Result<IntegerPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    check_order(n)?;
    let bells: Vec<IntegerPolynomial> = (0..=n).map(bell_polynomial).collect();
    let mut total = IntegerPolynomial::zero();
    for k in 1..=n {
        let mut shifted = IntegerPolynomial::zero();
        for (j, bell) in bells.iter().enumerate() {
            let c = BigInt::from(binomial(n, j)) * BigInt::from(k).pow((n - j) as u32);
            shifted = shifted + bell.scale(&c);
        }
        total = total + IntegerPolynomial::monomial(BigInt::from(stirling2(n, k)), k) * shifted;
    }
    let expected = bell_polynomial(2 * n);
    if total != expected {
        return Err(Error::IdentityViolation(format!(
            "order {n}: partition sum {} differs from B_{}(λ) = {}",
            total.display_in("λ"),
            2 * n,
            expected.display_in("λ")
        )));
    }
    Ok(total)
}

/// Monte Carlo check of `E[F (∫ u dω)^n] = Σ_profiles ...`, with both sides
/// drawn on shared configurations. Exact polynomial sides are attached when
/// available.
pub fn random_moment_identity(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<IdentityReport> {
    let out = run_random(space, u, f, n, mc, true)?;
    let lambda = space.total_mass();
    let lhs = out.lhs.expect("left side requested");
    let mut report = IdentityReport::new(
        "random-moment",
        n,
        lambda,
        Side::from(lhs),
        Side::from(out.total),
        Tolerance::Statistical {
            multiplier: mc.confidence_multiplier,
        },
    )
    .with_terms(out.terms)
    .with_mc(mc);
    if let Some(exact) = random_moment_exact(u, f, n)? {
        report = report.with_note(format!(
            "exact value at λ = {lambda}: {}",
            exact.lhs.eval_f64(lambda)
        ));
        report = report.with_exact(exact);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{FunctionalSpec, IntegrandSpec};

    #[test]
    fn count_integrand_matches_bell_polynomials() {
        assert_eq!(
            count_integrand_exact(1).unwrap(),
            IntegerPolynomial::new([0, 1, 1])
        );
        assert_eq!(
            count_integrand_exact(2).unwrap(),
            IntegerPolynomial::new([0, 1, 7, 6, 1])
        );
        assert_eq!(
            count_integrand_exact(3).unwrap(),
            IntegerPolynomial::new([0, 1, 31, 90, 65, 15, 1])
        );
        assert!(count_integrand_exact(0).is_err());
    }

    #[test]
    fn exact_mode_for_count_integrand() {
        for n in 1..=4 {
            let exact = random_moment_exact(&IntegrandSpec::Count, &FunctionalSpec::One, n)
                .unwrap()
                .unwrap();
            assert!(exact.equal, "n={n}");
            assert_eq!(exact.lhs, bell_polynomial(2 * n));
        }
    }

    #[test]
    fn exact_mode_with_polynomial_functional() {
        let f = FunctionalSpec::PolyOfCount {
            poly: IntegerPolynomial::new([1, -2, 1]),
        };
        let u = IntegrandSpec::PolyOfCount {
            poly: IntegerPolynomial::new([3, 1]),
        };
        for n in 0..=3 {
            let exact = random_moment_exact(&u, &f, n).unwrap().unwrap();
            assert!(exact.equal, "n={n}");
        }
    }

    #[test]
    fn zero_order_is_expectation_of_f() {
        let space = MeasureSpace::uniform(0.0, 1.0, 1.5).unwrap();
        let mc = MCParams::new(4_000, 3).unwrap();
        let f = FunctionalSpec::Count { region: None };
        let rhs = moment_random_rhs(&space, &IntegrandSpec::Count, &f, 0, &mc).unwrap();
        let direct = estimate_scalar(&mc, |rng| {
            Ok(f.eval(&sample_configuration(&space, rng)))
        })
        .unwrap();
        assert_eq!(rhs.total.mean, direct.mean);
        assert_eq!(rhs.terms.len(), 1);
    }

    #[test]
    fn count_integrand_second_moment_by_simulation() {
        let space = MeasureSpace::unit_lebesgue();
        let mc = MCParams::new(40_000, 11).unwrap();
        let report =
            random_moment_identity(&space, &IntegrandSpec::Count, &FunctionalSpec::One, 2, &mc)
                .unwrap();
        assert!(report.passed(), "{report:?}");
        assert!((report.lhs.value() - 15.0).abs() < 4.0 * report.lhs.stderr());
    }

    #[test]
    fn zero_intensity_gives_only_empty_configuration_terms() {
        let space = MeasureSpace::uniform(0.0, 1.0, 0.0).unwrap();
        let mc = MCParams::new(200, 1).unwrap();
        let rhs = moment_random_rhs(&space, &IntegrandSpec::Count, &FunctionalSpec::One, 2, &mc)
            .unwrap();
        assert_eq!(rhs.total.mean, 0.0);
    }
}
