//! Shared Monte Carlo driver for partition sums.
//!
//! Each replicate draws `ω` first, evaluates the left side on it, then for
//! every term draws that term's points `s_1, ..., s_b` i.i.d. from `σ / λ`
//! and evaluates the term on `(ω, s)`. The left side and all terms therefore
//! see the same `ω` (common random numbers), and the standard error of the
//! right side is taken from the per-replicate weighted totals, so covariance
//! between terms is accounted for.

use super::report::TermReport;
use crate::error::Result;
use crate::measure::MeasureSpace;
use crate::montecarlo::{estimate_vector, Estimate, MCParams};
use crate::process::{sample_configuration, Configuration};

pub(crate) struct TermSpec {
    pub label: String,
    pub weight: f64,
    /// Number of points `s_i` integrated against `σ`.
    pub points: usize,
}

pub(crate) struct SumOutcome {
    pub lhs: Option<Estimate>,
    pub total: Estimate,
    pub terms: Vec<TermReport>,
}

type LhsFn<'a> = dyn Fn(&Configuration) -> Result<f64> + Sync + 'a;

/// `eval(i, ω, s)` is the integrand of term `i`; the driver multiplies it by
/// `λ^points`.
pub(crate) fn run<E>(
    space: &MeasureSpace,
    mc: &MCParams,
    specs: &[TermSpec],
    lhs: Option<&LhsFn<'_>>,
    eval: E,
) -> Result<SumOutcome>
where
    E: Fn(usize, &Configuration, &[f64]) -> Result<f64> + Sync,
{
    let lambda = space.total_mass();
    let scales: Vec<f64> = specs.iter().map(|t| lambda.powi(t.points as i32)).collect();
    let max_points = specs.iter().map(|t| t.points).max().unwrap_or(0);
    let width = 2 + specs.len();

    let estimates = estimate_vector(mc, width, |rng, buf| {
        let omega = sample_configuration(space, rng);
        if let Some(lhs) = lhs {
            buf[0] = lhs(&omega)?;
        }
        let mut s = Vec::with_capacity(max_points);
        let mut total = 0.0;
        for (i, spec) in specs.iter().enumerate() {
            let value = if spec.points > 0 && lambda <= 0.0 {
                0.0
            } else {
                s.clear();
                for _ in 0..spec.points {
                    s.push(space.sample_point(rng)?);
                }
                scales[i] * eval(i, &omega, &s)?
            };
            buf[2 + i] = value;
            total += spec.weight * value;
        }
        buf[1] = total;
        Ok(())
    })?;

    let terms = specs
        .iter()
        .zip(&estimates[2..])
        .map(|(spec, e)| TermReport {
            label: spec.label.clone(),
            weight: spec.weight,
            mean: e.mean,
            stderr: e.stderr,
        })
        .collect();
    Ok(SumOutcome {
        lhs: lhs.map(|_| estimates[0]),
        total: estimates[1],
        terms,
    })
}
