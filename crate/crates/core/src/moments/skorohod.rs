use num_traits::ToPrimitive;

use super::random::PartitionSumEstimate;
use super::report::{IdentityReport, Side, Tolerance};
use super::sampling::{self, TermSpec};
use super::check_order;
use crate::combinatorics::{coefficient_c, profiles};
use crate::error::Result;
use crate::measure::MeasureSpace;
use crate::montecarlo::{estimate_scalar, Estimate, MCParams};
use crate::process::{sample_configuration, skorohod_integral, Configuration, Functional, RandomIntegrand};

/// `E[F δ(u)^n]`.
pub fn skorohod_moment_lhs(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<Estimate> {
    estimate_scalar(mc, |rng| {
        let omega = sample_configuration(space, rng);
        lhs_value(space, u, f, n, &omega)
    })
}

fn lhs_value(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    omega: &Configuration,
) -> Result<f64> {
    let fv = f.eval(omega);
    if n == 0 {
        return Ok(fv);
    }
    Ok(fv * skorohod_integral(u, omega, space)?.powi(n as i32))
}

/// One term: `c` singletons appended to the blocks `sizes` (`k` of them).
struct Shape {
    sizes: Vec<usize>,
}

fn specs(n: usize) -> (Vec<TermSpec>, Vec<Shape>) {
    let mut specs = Vec::new();
    let mut shapes = Vec::new();
    for c in 0..=n {
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        for p in profiles(n - c) {
            let coefficient = coefficient_c(&p, c).to_f64().unwrap_or(f64::INFINITY);
            specs.push(TermSpec {
                label: format!("c={c} {p}"),
                weight: sign * coefficient,
                points: p.parts() + c,
            });
            shapes.push(Shape {
                sizes: p.sizes().to_vec(),
            });
        }
    }
    (specs, shapes)
}

/// `ε⁺_{s_k} F ∏_{p ≤ k} ε⁺_{s_k \ s_p} u_{s_p}^{l_p} ∏_{p > k} ε⁺_{s_k} u_{s_p}`.
fn term_value(
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    sizes: &[usize],
    omega: &Configuration,
    s: &[f64],
) -> f64 {
    let k = sizes.len();
    let shifted = omega.add_points(&s[..k]);
    let mut value = f.eval(&shifted);
    if value == 0.0 {
        return 0.0;
    }
    let mut others = Vec::with_capacity(k.saturating_sub(1));
    for (p, &l) in sizes.iter().enumerate() {
        others.clear();
        others.extend(s[..k].iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &x)| x));
        value *= u.eval(s[p], &omega.add_points(&others)).powi(l as i32);
    }
    for &x in &s[k..] {
        value *= u.eval(x, &shifted);
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
    let lhs = |omega: &Configuration| lhs_value(space, u, f, n, omega);
    sampling::run(space, mc, &specs, with_lhs.then_some(&lhs as _), |i, omega, s| {
        Ok(term_value(u, f, &shapes[i].sizes, omega, s))
    })
}

/// Right side of the Skorohod moment identity: for each number `c` of
/// singletons and each profile `(l_1..l_k)` of `n - c`, the term
/// `(-1)^c C(n,c) N_profile E[∫ ε⁺_{s_k} F ∏_p ε⁺_{s_k \ s_p} u_{s_p}^{l_p} dσ^{k+c}]`.
/// The coefficient is evaluated by the nested placement sum.
pub fn skorohod_moment_rhs(
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

/// Monte Carlo check of `E[F δ(u)^n]` against its partition expansion.
pub fn skorohod_identity(
    space: &MeasureSpace,
    u: &dyn RandomIntegrand,
    f: &dyn Functional,
    n: usize,
    mc: &MCParams,
) -> Result<IdentityReport> {
    let out = run(space, u, f, n, mc, true)?;
    Ok(IdentityReport::new(
        "skorohod-moment",
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
