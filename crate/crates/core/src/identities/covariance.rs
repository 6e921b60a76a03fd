use num_traits::ToPrimitive;

use crate::combinatorics::stirling2;
use crate::error::{Error, Result};
use crate::measure::{Interval, MeasureSpace};
use crate::moments::{IdentityReport, Side, TermReport, Tolerance};
use crate::montecarlo::{sample_rows, Estimate, MCParams};
use crate::process::{sample_configuration, Functional};

/// `Cov(F, ω(A)^n) = Σ_k S(n,k) ∫_{A^k} E[ε⁺_{s_k} F - F] σ(ds_1) ... σ(ds_k)`.
///
/// The left side is the sample covariance over the replicates; its standard
/// error comes from the centered products `(F_i - F̄)(G_i - Ḡ)`. The right
/// side draws `s_1, ..., s_k` from `σ` restricted to `A` on the same `ω`.
pub fn covariance_identity(
    space: &MeasureSpace,
    region: &Interval,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<IdentityReport> {
    let mass = space.measure_of(region);
    if !mass.is_finite() {
        return Err(Error::InvalidParameter(format!("σ(A) = {mass} is not finite")));
    }
    let weights: Vec<f64> = (1..=n)
        .map(|k| stirling2(n, k).to_f64().unwrap_or(f64::INFINITY))
        .collect();
    // columns: F, ω(A)^n, total, one per k
    let width = 3 + n;
    let rows = sample_rows(mc, width, |rng, row| {
        let omega = sample_configuration(space, rng);
        let base = f.eval(&omega);
        row[0] = base;
        row[1] = (omega.count_in(region) as f64).powi(n as i32);
        let mut total = 0.0;
        let mut s = Vec::with_capacity(n);
        for k in 1..=n {
            let value = if mass > 0.0 {
                s.clear();
                for _ in 0..k {
                    s.push(space.sample_point_in(region, rng)?);
                }
                mass.powi(k as i32) * (f.eval(&omega.add_points(&s)) - base)
            } else {
                0.0
            };
            row[2 + k] = value;
            total += weights[k - 1] * value;
        }
        row[2] = total;
        Ok(())
    })?;

    let m = mc.replicates;
    let column = |j: usize| rows.iter().skip(j).step_by(width).copied();
    let lhs = covariance_estimate(column(0), column(1), m);
    let rhs = mean_estimate(column(2), m);
    let terms = (1..=n)
        .map(|k| {
            let e = mean_estimate(column(2 + k), m);
            TermReport {
                label: format!("k={k}"),
                weight: weights[k - 1],
                mean: e.mean,
                stderr: e.stderr,
            }
        })
        .collect();

    for e in [&lhs, &rhs] {
        if !(e.mean.is_finite() && e.stderr.is_finite()) {
            return Err(Error::NonFinite(format!("covariance estimate {e:?}")));
        }
    }
    Ok(IdentityReport::new(
        "covariance",
        n,
        space.total_mass(),
        Side::from(lhs),
        Side::from(rhs),
        Tolerance::Statistical {
            multiplier: mc.confidence_multiplier,
        },
    )
    .with_terms(terms)
    .with_mc(mc)
    .with_note(format!("A = {region}, σ(A) = {mass}")))
}

fn mean_estimate(values: impl Iterator<Item = f64> + Clone, m: usize) -> Estimate {
    let mean = values.clone().sum::<f64>() / m as f64;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
    Estimate {
        mean,
        stderr: (var / m as f64).sqrt(),
        replicates: m,
    }
}

fn covariance_estimate(
    x: impl Iterator<Item = f64> + Clone,
    y: impl Iterator<Item = f64> + Clone,
    m: usize,
) -> Estimate {
    let mx = x.clone().sum::<f64>() / m as f64;
    let my = y.clone().sum::<f64>() / m as f64;
    let products = x.zip(y).map(move |(a, b)| (a - mx) * (b - my));
    let e = mean_estimate(products, m);
    Estimate {
        mean: e.mean * m as f64 / (m - 1) as f64,
        ..e
    }
}
