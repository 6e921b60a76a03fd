use serde::Serialize;

use crate::error::{Error, Result};

/// Terms below this fraction of the running sum count as negligible.
pub const NEGLIGIBLE_RATIO: f64 = 1e-12;
/// Consecutive negligible, non-increasing terms required to stop.
pub const STABLE_TERMS: usize = 5;
/// Largest automatic truncation index.
pub const MAX_TERMS: usize = 200;

/// How many terms of a series to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    /// Stop after `STABLE_TERMS` consecutive non-increasing terms below
    /// `NEGLIGIBLE_RATIO` of the sum; give up past index `MAX_TERMS`.
    Auto,
    /// Keep the terms of index `0..=K`.
    Fixed(usize),
}

/// A truncated series with the size of its tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    /// Index of the last term kept.
    pub last_index: usize,
    /// Geometric estimate of the omitted tail, `|t_K| ρ / (1 - ρ)` with
    /// `ρ = |t_K / t_{K-1}|`; infinite when `ρ >= 1`.
    pub remainder: f64,
}

impl SeriesSum {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            last_index: 0,
            remainder: 0.0,
        }
    }
}

/// Sums `term(0) + term(1) + ...` under the given truncation.
pub fn truncated_sum(
    truncation: Truncation,
    mut term: impl FnMut(usize) -> Result<f64>,
) -> Result<SeriesSum> {
    let mut sum = 0.0;
    let mut previous = f64::INFINITY;
    let mut streak = 0;
    let mut index = 0;
    let mut last;
    let mut ratio = f64::INFINITY;
    loop {
        let t = term(index)?;
        if !t.is_finite() {
            return Err(Error::NonFinite(format!("series term {index} is {t}")));
        }
        sum += t;
        ratio = if previous == 0.0 {
            if t == 0.0 { 0.0 } else { f64::INFINITY }
        } else if previous.is_finite() {
            (t / previous).abs()
        } else {
            ratio
        };
        last = t;
        match truncation {
            Truncation::Fixed(k) if index >= k => break,
            Truncation::Fixed(_) => {}
            Truncation::Auto => {
                if t.abs() <= NEGLIGIBLE_RATIO * sum.abs() && t.abs() <= previous.abs() {
                    streak += 1;
                } else {
                    streak = 0;
                }
                if streak == STABLE_TERMS {
                    break;
                }
                if index >= MAX_TERMS {
                    return Err(Error::TruncationNotConverged {
                        terms: index + 1,
                        last_ratio: ratio,
                    });
                }
            }
        }
        previous = t;
        index += 1;
    }
    let remainder = if last == 0.0 && ratio <= 1.0 {
        0.0
    } else if ratio < 1.0 {
        last.abs() * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    Ok(SeriesSum {
        value: sum,
        last_index: index,
        remainder,
    })
}

/// `E[g(Z) e^{tZ}]` for `Z ~ Poisson(λ)`, summed term by term.
pub fn poisson_series(
    lambda: f64,
    t: f64,
    truncation: Truncation,
    mut g: impl FnMut(u64) -> Result<f64>,
) -> Result<SeriesSum> {
    if !(lambda.is_finite() && lambda >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Poisson series needs finite λ >= 0 and finite t, got λ = {lambda}, t = {t}"
        )));
    }
    let step = lambda * t.exp();
    let mut weight = (-lambda).exp();
    truncated_sum(truncation, |z| {
        if z > 0 {
            weight *= step / z as f64;
        }
        if weight == 0.0 {
            Ok(0.0)
        } else {
            Ok(weight * g(z as u64)?)
        }
    })
}
