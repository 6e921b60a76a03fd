use num_traits::ToPrimitive;

use super::random::PartitionSumEstimate;
use super::report::{IdentityReport, Side, Tolerance};
use super::sampling::{self, TermSpec};
use super::check_order;
use crate::combinatorics::{binomial, profiles};
use crate::error::Result;
use crate::measure::MeasureSpace;
use crate::montecarlo::{estimate_scalar, Estimate, MCParams};
use crate::process::{pathwise_integral, sample_configuration, Configuration, Functional, RandomIntegrand};

/// `E[F (∫ u_x(ω) (ω(dx) - σ(dx)))^n]`.
pub fn compensated_moment_lhs(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<Estimate> {
    estimate_scalar(mc, |rng| {
        let omega = sample_configuration(space, rng);
        Ok(lhs_value(space, u, f, n, &omega))
    })
}

fn lhs_value(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    omega: &Configuration,
) -> f64 {
    let centered = pathwise_integral(u, omega) - u.compensator(space, omega);
    f.eval(omega) * centered.powi(n as i32)
}

fn specs(n: usize) -> (Vec<TermSpec>, Vec<(usize, Vec<usize>)>) {
    let mut specs = Vec::new();
    let mut shapes = Vec::new();
    for c in 0..=n {
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        let choose = binomial(n, c).to_f64().unwrap_or(f64::INFINITY);
        for p in profiles(n - c) {
            specs.push(TermSpec {
                label: format!("c={c} {p}"),
                weight: sign * choose * p.count().to_f64().unwrap_or(f64::INFINITY),
                points: p.parts(),
            });
            shapes.push((c, p.sizes().to_vec()));
        }
    }
    (specs, shapes)
}

/// `ε⁺_{s} (F (∫ u dσ)^c ∏ u_{s_i}^{l_i})`.
fn term_value(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    c: usize,
    sizes: &[usize],
    omega: &Configuration,
    s: &[f64],
) -> f64 {
    let shifted = omega.add_points(s);
    let mut value = f.eval(&shifted);
    if value == 0.0 {
        return 0.0;
    }
    if c > 0 {
        value *= u.compensator(space, &shifted).powi(c as i32);
    }
    for (&x, &l) in s.iter().zip(sizes) {
        value *= u.eval(x, &shifted).powi(l as i32);
    }
    value
}

fn run(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
    with_lhs: bool,
) -> Result<sampling::SumOutcome> {
    check_order(n)?;
    let (specs, shapes) = specs(n);
    let lhs = |omega: &Configuration| Ok(lhs_value(space, u, f, n, omega));
    sampling::run(space, mc, &specs, with_lhs.then_some(&lhs as _), |i, omega, s| {
        let (c, sizes) = &shapes[i];
        Ok(term_value(space, u, f, *c, sizes, omega, s))
    })
}

/// Alternating binomial expansion of the compensated moment: for each `c`,
/// `(-1)^c C(n,c)` times the partition sum of order `n - c` with the extra
/// factor `(∫ u dσ)^c` inside the addition operator.
pub fn compensated_moment_rhs(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<PartitionSumEstimate> {
    let out = run(space, u, f, n, mc, false)?;
    Ok(PartitionSumEstimate {
        total: out.total,
        terms: out.terms,
    })
}

pub fn compensated_moment_identity(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<IdentityReport> {
    let out = run(space, u, f, n, mc, true)?;
    Ok(IdentityReport::new(
        "compensated-moment",
        n,
        space.total_mass(),
        Side::from(out.lhs.expect("left side requested")),
        Side::from(out.total),
        Tolerance::Statistical {
            multiplier: mc.confidence_multiplier,
        },
    )
    .with_terms(out.terms)
    .with_mc(mc))
}
