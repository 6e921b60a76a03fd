use num_traits::ToPrimitive;
use poisson_moments::combinatorics::{bell_polynomial, binomial, IntegerPolynomial};
use poisson_moments::identities::{
    centered_poisson_polynomial, exponential_identity, exponential_rhs, poisson_series,
    stirling_moment_identity, stirling_moment_polynomials, CountFunctionSpec, Truncation,
};
use poisson_moments::measure::{Density, Interval, MeasureSpace, Supported};
use poisson_moments::moments::{
    centered_from_power_integrals, centered_moment_deterministic, count_integrand_exact,
    moment_deterministic, moment_from_power_integrals, moment_random_rhs,
};
use poisson_moments::montecarlo::{estimate_scalar, MCParams};
use poisson_moments::process::{
    pathwise_integral, sample_configuration, Deterministic, FunctionalSpec, IntegrandSpec,
};

fn spaces() -> Vec<MeasureSpace> {
    let domain = Interval::new(-1.0, 2.0).unwrap();
    vec![
        MeasureSpace::unit_lebesgue(),
        MeasureSpace::uniform(0.0, 3.0, 2.5).unwrap(),
        MeasureSpace::builder(domain).density(Density::Ramp).total_mass(1.7).build().unwrap(),
        MeasureSpace::builder(domain).density(Density::Bump).mass_scale(0.8).build().unwrap(),
    ]
}

fn test_functions() -> Vec<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    vec![
        Box::new(|x| x),
        Box::new(|x| (2.0 * x).sin()),
        Box::new(|x| 1.0 - 0.5 * x * x),
        Box::new(|x| if x < 0.5 { -0.7 } else { 1.3 }),
    ]
}

#[test]
fn partition_and_composition_forms_agree() {
    // moment_deterministic fails with a consistency error on disagreement
    for space in spaces() {
        for f in test_functions() {
            for n in 0..=8 {
                let m = moment_deterministic(&space, &f, n).unwrap();
                let scale: f64 = m.terms.iter().map(|t| (t.weight * t.mean).abs()).sum();
                assert!((m.partition_form - m.composition_form).abs() <= 1e-10 * scale);
            }
        }
    }
}

#[test]
fn binomial_inversion_reproduces_centered_moments() {
    for space in spaces() {
        for f in test_functions() {
            let m = space.power_integrals(&f, 8).unwrap();
            for n in 0..=8 {
                let mut inverted = 0.0;
                let mut scale = 0.0;
                for c in 0..=n {
                    let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                    let raw = moment_from_power_integrals(&m, n - c).unwrap().value();
                    let term = sign * binomial(n, c).to_f64().unwrap() * m[0].powi(c as i32) * raw;
                    inverted += term;
                    scale += term.abs();
                }
                let centered = centered_from_power_integrals(&m, n).unwrap();
                assert!(
                    (inverted - centered).abs() <= 1e-10 * scale.max(1.0),
                    "n={n}: {inverted} vs {centered}"
                );
            }
        }
    }
}

#[test]
fn indicator_moments_are_bell_values_on_every_space() {
    for space in spaces() {
        let region = Interval::new(0.0, 0.75).unwrap();
        let f = Supported { f: |_| 1.0, support: region };
        let lambda = space.measure_of(&region);
        for n in 1..=8 {
            let got = moment_deterministic(&space, &f, n).unwrap().value();
            let bell = bell_polynomial(n).eval_f64(lambda);
            assert!((got - bell).abs() <= 1e-9 * bell, "n={n}: {got} vs {bell}");
        }
    }
}

#[test]
fn centered_indicator_moments_use_no_singleton_numbers() {
    let space = MeasureSpace::uniform(0.0, 1.0, 2.0).unwrap();
    for n in 0..=8 {
        let got = centered_moment_deterministic(&space, &|_| 1.0, n).unwrap();
        let expected = centered_poisson_polynomial(n).eval_f64(2.0);
        assert!((got - expected).abs() <= 1e-10 * expected.max(1.0), "n={n}");
    }
}

#[test]
fn count_integrand_identity_is_exact() {
    for n in 1..=5 {
        assert_eq!(count_integrand_exact(n).unwrap(), bell_polynomial(2 * n));
    }
}

#[test]
fn random_rhs_reduces_to_deterministic_moment() {
    let space = MeasureSpace::builder(Interval::new(0.0, 1.0).unwrap())
        .density(Density::Ramp)
        .total_mass(1.5)
        .build()
        .unwrap();
    let u = Deterministic(|x: f64| 1.0 + x);
    let mc = MCParams::new(60_000, 21).unwrap();
    for n in 1..=3 {
        let det = moment_deterministic(&space, &u.0, n).unwrap();
        let rhs = moment_random_rhs(&space, &u, &FunctionalSpec::One, n, &mc).unwrap();
        assert_eq!(det.terms.len(), rhs.terms.len());
        for (d, r) in det.terms.iter().zip(&rhs.terms) {
            assert_eq!(d.label, r.label);
            assert_eq!(d.weight, r.weight);
            assert!(
                (d.mean - r.mean).abs() <= 4.0 * r.stderr,
                "{}: {} vs {} ± {}",
                d.label,
                d.mean,
                r.mean,
                r.stderr
            );
        }
        assert!(rhs.total.agrees_with_value(det.value(), 4.0));
    }
}

#[test]
fn linear_integrand_second_moment_by_simulation() {
    let space = MeasureSpace::unit_lebesgue();
    let u = IntegrandSpec::Linear { region: None };
    let mc = MCParams::new(100_000, 5).unwrap();
    let est = estimate_scalar(&mc, |rng| {
        let omega = sample_configuration(&space, rng);
        Ok(pathwise_integral(&u, &omega).powi(2))
    })
    .unwrap();
    assert!(est.agrees_with_value(7.0 / 12.0, 4.0), "{est:?}");
}

#[test]
fn chen_stein_polynomials_are_exact() {
    let fs = [
        IntegerPolynomial::new([1]),
        IntegerPolynomial::new([0, 1]),
        IntegerPolynomial::new([2, -1, 3]),
        IntegerPolynomial::new([-4, 0, 1, 2]),
    ];
    for f in &fs {
        let d = f.degree().unwrap();
        for n in 0..=6 {
            let exact = stirling_moment_polynomials(n, f);
            assert!(exact.equal, "n={n} f={f:?}");
            assert_eq!(exact.lhs.degree(), Some(n + d));
        }
    }
    for n in 0..=6 {
        let exact = stirling_moment_polynomials(n, &IntegerPolynomial::x());
        assert_eq!(exact.rhs, bell_polynomial(n + 1));
    }
}

#[test]
fn chen_stein_reports_pass_for_registry_functions() {
    for id in ["poly:1", "poly:0,1", "poly:1,2,1", "exp:0.2", "exp:-0.5"] {
        let f: CountFunctionSpec = id.parse().unwrap();
        for n in 0..=5 {
            for lambda in [0.0, 0.4, 2.5] {
                let r = stirling_moment_identity(lambda, n, &f).unwrap();
                assert!(r.passed(), "{id} n={n} λ={lambda}: {r:?}");
            }
        }
    }
}

#[test]
fn exponential_truncation_error_is_monotone() {
    for id in ["poly:1", "poly:0,1", "poly:0,0,1", "exp:0.3"] {
        let f: CountFunctionSpec = id.parse().unwrap();
        let (lambda, t) = (1.5, 0.6);
        let target = poisson_series(lambda, t, Truncation::Auto, |z| Ok(f.eval(z))).unwrap().value;
        let mut previous = f64::INFINITY;
        for k in 0..40 {
            let err = (exponential_rhs(lambda, t, &f, Truncation::Fixed(k)).unwrap().value - target).abs();
            // once at rounding level the error only fluctuates
            assert!(err <= previous || err <= 1e-13 * target, "{id} K={k}");
            previous = err;
        }
        assert!(previous < 1e-10);
        assert!(exponential_identity(lambda, t, &f, Truncation::Auto).unwrap().passed());
    }
}
