use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::count_function::CountFunctionSpec;
use super::series::{poisson_series, truncated_sum, SeriesSum, Truncation};
use crate::combinatorics::{poisson_expectation, stirling2, stirling2_no_singletons, IntegerPolynomial};
use crate::error::{Error, Result};
use crate::moments::{ExactPolynomials, IdentityReport, Side, TermReport, Tolerance};

/// Relative agreement required of the Stirling-sum identity.
pub const STIRLING_TOLERANCE: f64 = 1e-9;
/// Absolute agreement required of the exponential identity.
pub const EXPONENTIAL_TOLERANCE: f64 = 1e-8;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("λ must be finite and non-negative, got {lambda}")))
    }
}

fn stirling_f64(n: usize, k: usize) -> f64 {
    stirling2(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// `E[Z^n f(Z)]` and `Σ_k S(n,k) E[f(Z+k)]` as polynomials in `λ`.
pub fn stirling_moment_polynomials(n: usize, f: &IntegerPolynomial) -> ExactPolynomials {
    let lhs = poisson_expectation(&(IntegerPolynomial::monomial(1, n) * f.clone()));
    let rhs = (0..=n)
        .map(|k| {
            let shifted = poisson_expectation(&f.shift(k as i64));
            IntegerPolynomial::monomial(BigInt::from(stirling2(n, k)), k) * shifted
        })
        .sum();
    ExactPolynomials::new(lhs, rhs)
}

/// `E[Z^n f(Z)] = Σ_k λ^k S(n,k) E[f(Z+k)]` for `Z ~ Poisson(λ)`.
///
/// Polynomial `f` is handled exactly; exponential `f` by truncated series
/// on both sides.
pub fn stirling_moment_identity(lambda: f64, n: usize, f: &CountFunctionSpec) -> Result<IdentityReport> {
    check_lambda(lambda)?;
    let tolerance = Tolerance::Relative {
        tol: STIRLING_TOLERANCE,
    };
    let mut terms = Vec::with_capacity(n + 1);
    let mut notes = Vec::new();
    let report = match f {
        CountFunctionSpec::Polynomial { coefficients } => {
            for k in 0..=n {
                let shifted = poisson_expectation(&coefficients.shift(k as i64)).eval_f64(lambda);
                terms.push(TermReport {
                    label: format!("k={k}"),
                    weight: stirling_f64(n, k),
                    mean: lambda.powi(k as i32) * shifted,
                    stderr: 0.0,
                });
            }
            let exact = stirling_moment_polynomials(n, coefficients);
            let lhs = exact.lhs.eval_f64(lambda);
            let rhs = exact.rhs.eval_f64(lambda);
            IdentityReport::new(
                "chen-stein",
                n,
                lambda,
                Side::Exact { value: lhs },
                Side::Exact { value: rhs },
                tolerance,
            )
            .with_exact(exact)
        }
        CountFunctionSpec::Exponential { rate } => {
            let lhs = poisson_series(lambda, *rate, Truncation::Auto, |z| Ok((z as f64).powi(n as i32)))?;
            notes.push(series_note("left side", &lhs));
            let mut rhs = 0.0;
            for k in 0..=n {
                let shifted = f.shifted_expectation(lambda, k as u64, Truncation::Auto)?;
                let weight = stirling_f64(n, k);
                let mean = lambda.powi(k as i32) * shifted.value;
                rhs += weight * mean;
                terms.push(TermReport {
                    label: format!("k={k}"),
                    weight,
                    mean,
                    stderr: 0.0,
                });
            }
            IdentityReport::new(
                "chen-stein",
                n,
                lambda,
                Side::Exact { value: lhs.value },
                Side::Exact { value: rhs },
                tolerance,
            )
        }
    };
    let mut report = report.with_terms(terms).with_note(format!("f = {f}"));
    for note in notes {
        report = report.with_note(note);
    }
    Ok(report)
}

fn series_note(which: &str, s: &SeriesSum) -> String {
    format!(
        "{which} truncated after index {}, remainder estimate {:e}",
        s.last_index, s.remainder
    )
}

/// `Σ_{k ≤ K} (λ^k / k!) (e^t - 1)^k E[f(Z+k)]`.
pub fn exponential_rhs(
    lambda: f64,
    t: f64,
    f: &CountFunctionSpec,
    truncation: Truncation,
) -> Result<SeriesSum> {
    check_lambda(lambda)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("t must be finite, got {t}")));
    }
    let step = lambda * t.exp_m1();
    let mut coefficient = 1.0;
    truncated_sum(truncation, |k| {
        if k > 0 {
            coefficient *= step / k as f64;
        }
        if coefficient == 0.0 {
            return Ok(0.0);
        }
        Ok(coefficient * f.shifted_expectation(lambda, k as u64, Truncation::Auto)?.value)
    })
}

/// `E[f(Z) e^{tZ}] = Σ_k (λ^k / k!) (e^t - 1)^k E[f(Z+k)]`: left side by the
/// series over the Poisson law, right side by the `k`-sum.
pub fn exponential_identity(
    lambda: f64,
    t: f64,
    f: &CountFunctionSpec,
    truncation: Truncation,
) -> Result<IdentityReport> {
    check_lambda(lambda)?;
    let lhs = poisson_series(lambda, t, Truncation::Auto, |z| Ok(f.eval(z)))?;
    let rhs = exponential_rhs(lambda, t, f, truncation)?;
    Ok(IdentityReport::new(
        "exp-identity",
        0,
        lambda,
        Side::Exact { value: lhs.value },
        Side::Exact { value: rhs.value },
        Tolerance::Absolute {
            tol: EXPONENTIAL_TOLERANCE,
        },
    )
    .with_note(format!("f = {f}, t = {t}"))
    .with_note(series_note("left side", &lhs))
    .with_note(series_note("right side", &rhs)))
}

/// `E[(Z - λ)^n] = Σ_k λ^k S₂(n,k)`, as a polynomial in `λ`.
pub fn centered_poisson_polynomial(n: usize) -> IntegerPolynomial {
    IntegerPolynomial::new((0..=n).map(|k| BigInt::from(stirling2_no_singletons(n, k))))
}

/// `E[(Z - λ)^n]` for `Z ~ Poisson(λ)`.
pub fn centered_poisson_moment(lambda: f64, n: usize) -> f64 {
    centered_poisson_polynomial(n).eval_f64(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell_polynomial;

    fn spec(s: &str) -> CountFunctionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn constant_function_gives_bell_polynomial() {
        for n in 0..=6 {
            let exact = stirling_moment_polynomials(n, &IntegerPolynomial::one());
            assert!(exact.equal);
            assert_eq!(exact.lhs, bell_polynomial(n));
        }
    }

    #[test]
    fn identity_function_small_orders() {
        let r = stirling_moment_identity(1.5, 1, &spec("poly:0,1")).unwrap();
        assert!(r.passed());
        assert_eq!(r.exact.as_ref().unwrap().rhs, IntegerPolynomial::new([0, 1, 1]));
        let r = stirling_moment_identity(1.5, 2, &spec("poly:0,1")).unwrap();
        assert_eq!(r.exact.as_ref().unwrap().rhs, IntegerPolynomial::new([0, 1, 3, 1]));
    }

    #[test]
    fn exponential_function_by_series() {
        let r = stirling_moment_identity(2.0, 3, &spec("exp:0.25")).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn exponential_identity_cases() {
        // t = 0 leaves E[f(Z)]
        let r = exponential_identity(1.2, 0.0, &spec("poly:1,1"), Truncation::Auto).unwrap();
        assert!(r.passed());
        assert!((r.lhs.value() - 2.2).abs() < 1e-12);
        // f = 1 gives the moment generating value
        let r = exponential_identity(1.2, 0.7, &spec("poly:1"), Truncation::Auto).unwrap();
        assert!(r.passed());
        let mgf = (1.2 * 0.7f64.exp_m1()).exp();
        assert!((r.rhs.value() - mgf).abs() < 1e-12 * mgf);
        let r = exponential_identity(1.0, 2f64.ln(), &spec("poly:0,1"), Truncation::Auto).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn short_fixed_truncation_fails() {
        let r = exponential_identity(3.0, 1.0, &spec("poly:0,1"), Truncation::Fixed(2)).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn centered_poisson() {
        assert_eq!(centered_poisson_polynomial(2), IntegerPolynomial::new([0, 1]));
        assert_eq!(centered_poisson_polynomial(3), IntegerPolynomial::new([0, 1]));
        assert_eq!(centered_poisson_polynomial(4), IntegerPolynomial::new([0, 1, 3]));
        assert!((centered_poisson_moment(2.0, 4) - 14.0).abs() < 1e-12);
    }

    #[test]
    fn negative_intensity_is_rejected() {
        assert!(stirling_moment_identity(-1.0, 2, &spec("poly:1")).is_err());
        assert!(exponential_identity(-1.0, 0.1, &spec("poly:1"), Truncation::Auto).is_err());
    }
}
