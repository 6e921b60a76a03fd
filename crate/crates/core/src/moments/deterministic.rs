use num_traits::ToPrimitive;
use serde::Serialize;

use super::report::TermReport;
use super::check_order;
use crate::combinatorics::{profiles, profiles_with_min_part, PartitionProfile};
use crate::error::{Error, Result};
use crate::measure::{DeterministicIntegrand, MeasureSpace};

/// Relative tolerance between the partition and composition forms.
const FORM_AGREEMENT: f64 = 1e-10;

/// `E[(∫ f dω)^n]` evaluated two ways.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterministicMoment {
    pub n: usize,
    /// Sum over partition profiles of `N_profile * prod_i m_{l_i}`.
    pub partition_form: f64,
    /// `n! sum_r prod_k m_k^{r_k} / ((k!)^{r_k} r_k!)`.
    pub composition_form: f64,
    pub terms: Vec<TermReport>,
}

impl DeterministicMoment {
    pub fn value(&self) -> f64 {
        self.partition_form
    }
}

fn profile_product(profile: &PartitionProfile, m: &[f64]) -> f64 {
    profile.sizes().iter().map(|&l| m[l - 1]).product()
}

fn count_f64(profile: &PartitionProfile) -> f64 {
    profile.count().to_f64().unwrap_or(f64::INFINITY)
}

fn require_powers(m: &[f64], n: usize) -> Result<()> {
    if m.len() < n {
        return Err(Error::InvalidParameter(format!(
            "{} power integrals supplied, {n} needed",
            m.len()
        )));
    }
    Ok(())
}

/// Moment of order `n` from `m[k-1] = ∫ f^k dσ`.
pub fn moment_from_power_integrals(m: &[f64], n: usize) -> Result<DeterministicMoment> {
    check_order(n)?;
    require_powers(m, n)?;

    let terms: Vec<TermReport> = profiles(n)
        .iter()
        .map(|p| TermReport {
            label: p.to_string(),
            weight: count_f64(p),
            mean: profile_product(p, m),
            stderr: 0.0,
        })
        .collect();
    let partition_form: f64 = terms.iter().map(|t| t.weight * t.mean).sum();
    let scale: f64 = terms.iter().map(|t| (t.weight * t.mean).abs()).sum();
    let composition_form = composition_sum(m, n);

    if (partition_form - composition_form).abs() > FORM_AGREEMENT * scale {
        return Err(Error::Consistency {
            what: format!("moment of order {n}"),
            left: partition_form.to_string(),
            right: composition_form.to_string(),
        });
    }
    Ok(DeterministicMoment {
        n,
        partition_form,
        composition_form,
        terms,
    })
}

/// `E[(∫ f dω)^n]` for a deterministic `f`.
pub fn moment_deterministic(
    space: &MeasureSpace,
    f: &dyn DeterministicIntegrand,
    n: usize,
) -> Result<DeterministicMoment> {
    check_order(n)?;
    let m = space.power_integrals(f, n.max(1))?;
    moment_from_power_integrals(&m, n)
}

/// Centered moment from power integrals: only blocks of size at least two.
pub fn centered_from_power_integrals(m: &[f64], n: usize) -> Result<f64> {
    check_order(n)?;
    require_powers(m, n)?;
    Ok(profiles_with_min_part(n, 2)
        .iter()
        .map(|p| count_f64(p) * profile_product(p, m))
        .sum())
}

/// `E[(∫ f (dω - dσ))^n]` for a deterministic `f`.
pub fn centered_moment_deterministic(
    space: &MeasureSpace,
    f: &dyn DeterministicIntegrand,
    n: usize,
) -> Result<f64> {
    check_order(n)?;
    let m = space.power_integrals(f, n.max(1))?;
    centered_from_power_integrals(&m, n)
}

/// Walks the multiplicity vectors `r_1 + 2 r_2 + ... + n r_n = n` directly,
/// in floating point, independently of the profile enumeration.
fn composition_sum(m: &[f64], n: usize) -> f64 {
    let mut factorials = vec![1.0f64; n + 1];
    for k in 1..=n {
        factorials[k] = factorials[k - 1] * k as f64;
    }
    fn walk(k: usize, remaining: usize, m: &[f64], fact: &[f64], acc: f64) -> f64 {
        if remaining == 0 {
            return acc;
        }
        if k == 0 {
            return 0.0;
        }
        let mut total = 0.0;
        let mut r = 0;
        let mut factor = 1.0;
        while r * k <= remaining {
            total += walk(k - 1, remaining - r * k, m, fact, acc * factor);
            r += 1;
            factor *= m[k - 1] / (fact[k] * r as f64);
        }
        total
    }
    factorials[n] * walk(n, n, m, &factorials, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell_polynomial;

    #[test]
    fn indicator_moments_are_bell_values() {
        let lambda = 1.7;
        for n in 0..=8 {
            let m = vec![lambda; n.max(1)];
            let got = moment_from_power_integrals(&m, n).unwrap();
            let bell = bell_polynomial(n).eval_f64(lambda);
            assert!((got.value() - bell).abs() < 1e-10 * bell, "n={n}");
        }
    }

    #[test]
    fn identity_on_unit_interval_second_moment() {
        let space = MeasureSpace::unit_lebesgue();
        let got = moment_deterministic(&space, &|x: f64| x, 2).unwrap();
        assert!((got.value() - 7.0 / 12.0).abs() < 1e-13);
        assert_eq!(got.terms.len(), 2);
    }

    #[test]
    fn first_moment_is_the_integral() {
        let m = [0.3, 9.0, 9.0];
        assert!((moment_from_power_integrals(&m, 1).unwrap().value() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn centered_small_orders() {
        let m = [0.4, 0.7, 1.1, 2.0];
        assert_eq!(centered_from_power_integrals(&m, 0).unwrap(), 1.0);
        assert_eq!(centered_from_power_integrals(&m, 1).unwrap(), 0.0);
        assert_eq!(centered_from_power_integrals(&m, 2).unwrap(), 0.7);
        assert_eq!(centered_from_power_integrals(&m, 3).unwrap(), 1.1);
        let four = centered_from_power_integrals(&m, 4).unwrap();
        assert!((four - (2.0 + 3.0 * 0.49)).abs() < 1e-14);
    }

    #[test]
    fn order_above_cap_is_rejected() {
        let m = vec![1.0; 12];
        assert!(matches!(
            moment_from_power_integrals(&m, 11),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }
}
