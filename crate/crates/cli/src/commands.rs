use poisson_moments::combinatorics::{
    bell_number, bell_polynomial, enumerate_set_partitions, profiles, stirling2,
    stirling2_no_singletons, stirling_from_compositions, IntegerPolynomial,
};
use poisson_moments::identities::{
    centered_poisson_polynomial, covariance_identity, exponential_identity,
    stirling_moment_identity, CountFunctionSpec, Truncation,
};
use poisson_moments::measure::{Interval, MeasureSpace};
use poisson_moments::moments::{
    centered_moment_deterministic, compensated_moment_identity, count_integrand_exact,
    moment_deterministic, random_moment_identity, skorohod_identity, ExactPolynomials, Side,
    Tolerance,
};
use poisson_moments::process::{FunctionalSpec, IntegrandSpec, RegistryContext};
use poisson_moments::{Error, IdentityReport, MCParams, Result, SpaceConfig};
use serde_json::json;

use crate::output::Output;
use crate::{Command, Opts};

struct Setup {
    space: MeasureSpace,
    ctx: RegistryContext,
}

fn setup(opts: &Opts) -> Result<Setup> {
    let mut config = match &opts.config {
        Some(path) => SpaceConfig::load(path)?,
        None => SpaceConfig::default(),
    };
    if let Some(lambda) = opts.lambda {
        config = config.with_total_mass(lambda);
    }
    let space = config.build()?;
    let mut ctx = config.registry_context()?;
    if let Some(a) = &opts.a {
        ctx = ctx.with_a(a.parse()?);
    }
    if let Some(b) = &opts.b {
        ctx = ctx.with_b(b.parse()?);
    }
    Ok(Setup { space, ctx })
}

fn mc(opts: &Opts) -> Result<MCParams> {
    MCParams::new(opts.replicates, opts.seed)?.with_multiplier(opts.multiplier)
}

fn integrand(opts: &Opts, default: &str, ctx: &RegistryContext) -> Result<IntegrandSpec> {
    IntegrandSpec::parse(opts.u.as_deref().unwrap_or(default), ctx)
}

fn strings(p: &IntegerPolynomial) -> Vec<String> {
    p.coefficients().iter().map(ToString::to_string).collect()
}

pub fn run(command: &Command, opts: &Opts) -> Result<Output> {
    let n = opts.n;
    match command {
        Command::Bell => {
            let poly = bell_polynomial(n);
            let coefficients = strings(&poly);
            Ok(Output::Table {
                json: json!({
                    "n": n,
                    "bell_number": bell_number(n).to_string(),
                    "coefficients": coefficients,
                    "polynomial": poly.display_in("λ"),
                }),
                header: vec!["power", "coefficient"],
                rows: coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| vec![i.to_string(), c.clone()])
                    .collect(),
            })
        }
        Command::Stirling => {
            let row: Vec<String> = (0..=n).map(|k| stirling2(n, k).to_string()).collect();
            let no_singletons: Vec<String> =
                (0..=n).map(|k| stirling2_no_singletons(n, k).to_string()).collect();
            let mut compositions_agree = true;
            for k in 0..=n {
                compositions_agree &= stirling_from_compositions(n, k)? == stirling2(n, k);
            }
            if !compositions_agree {
                return Err(Error::IdentityViolation(format!(
                    "composition form of S({n}, k) disagrees with the recurrence"
                )));
            }
            Ok(Output::Table {
                json: json!({
                    "n": n,
                    "stirling2": row,
                    "no_singletons": no_singletons,
                    "composition_form_agrees": compositions_agree,
                }),
                header: vec!["k", "stirling2", "no_singletons"],
                rows: (0..=n)
                    .map(|k| vec![k.to_string(), row[k].clone(), no_singletons[k].clone()])
                    .collect(),
            })
        }
        Command::Partitions { list } => {
            let profs = profiles(n);
            let entries: Vec<_> = profs
                .iter()
                .map(|p| json!({ "profile": p.to_string(), "sizes": p.sizes(), "count": p.count().to_string() }))
                .collect();
            let mut json = json!({
                "n": n,
                "bell_number": bell_number(n).to_string(),
                "profiles": entries,
            });
            if *list {
                let all: Vec<String> = enumerate_set_partitions(n)?.map(|p| p.to_string()).collect();
                json["partitions"] = json!(all);
            }
            Ok(Output::Table {
                json,
                header: vec!["profile", "count"],
                rows: profs
                    .iter()
                    .map(|p| vec![p.to_string(), p.count().to_string()])
                    .collect(),
            })
        }
        Command::MomentDet => {
            let s = setup(opts)?;
            let u = integrand(opts, "linear", &s.ctx)?;
            let f = deterministic(&u)?;
            let m = moment_deterministic(&s.space, f, n)?;
            Ok(Output::Table {
                json: json!({
                    "n": n,
                    "lambda": s.space.total_mass(),
                    "u": u.to_string(),
                    "value": m.value(),
                    "partition_form": m.partition_form,
                    "composition_form": m.composition_form,
                    "terms": serde_json::to_value(&m.terms).expect("serializable terms"),
                }),
                header: vec!["profile", "count", "product"],
                rows: m
                    .terms
                    .iter()
                    .map(|t| vec![t.label.clone(), t.weight.to_string(), t.mean.to_string()])
                    .collect(),
            })
        }
        Command::MomentCentered => {
            let s = setup(opts)?;
            let u = integrand(opts, "linear", &s.ctx)?;
            let value = centered_moment_deterministic(&s.space, deterministic(&u)?, n)?;
            let mut json = json!({
                "n": n,
                "lambda": s.space.total_mass(),
                "u": u.to_string(),
                "value": value,
            });
            if let IntegrandSpec::Indicator { region } = &u {
                // ∫ 1_A (dω − dσ) = ω(A) − σ(A)
                let mass = region.map_or(s.space.total_mass(), |r| s.space.measure_of(&r));
                let poly = centered_poisson_polynomial(n);
                json["count_polynomial"] = json!(strings(&poly));
                json["count_polynomial_display"] = json!(poly.display_in("λ"));
                json["count_polynomial_value"] = json!(poly.eval_f64(mass));
            }
            Ok(Output::Table {
                json,
                header: vec!["n", "lambda", "u", "value"],
                rows: vec![vec![
                    n.to_string(),
                    s.space.total_mass().to_string(),
                    u.to_string(),
                    value.to_string(),
                ]],
            })
        }
        Command::VerifyRandom => {
            let s = setup(opts)?;
            let u = integrand(opts, "count", &s.ctx)?;
            let f = FunctionalSpec::parse(&opts.functional, &s.ctx)?;
            let report = random_moment_identity(&s.space, &u, &f, n, &mc(opts)?)?;
            Ok(Output::report(labelled(report, &u, &f)))
        }
        Command::VerifySkorohod => {
            let s = setup(opts)?;
            let u = integrand(opts, "count-times-f", &s.ctx)?;
            let f = FunctionalSpec::parse(&opts.functional, &s.ctx)?;
            let report = skorohod_identity(&s.space, &u, &f, n, &mc(opts)?)?;
            Ok(Output::report(labelled(report, &u, &f)))
        }
        Command::VerifyCompensated => {
            let s = setup(opts)?;
            let u = integrand(opts, "count", &s.ctx)?;
            let f = FunctionalSpec::parse(&opts.functional, &s.ctx)?;
            let report = compensated_moment_identity(&s.space, &u, &f, n, &mc(opts)?)?;
            Ok(Output::report(labelled(report, &u, &f)))
        }
        Command::ChenStein => {
            let lambda = poisson_lambda(opts)?;
            let f: CountFunctionSpec = opts.count_function.parse()?;
            Ok(Output::report(stirling_moment_identity(lambda, n, &f)?))
        }
        Command::ExpIdentity => {
            let lambda = poisson_lambda(opts)?;
            let f: CountFunctionSpec = opts.count_function.parse()?;
            let truncation = opts.k.map_or(Truncation::Auto, Truncation::Fixed);
            Ok(Output::report(exponential_identity(lambda, opts.t, &f, truncation)?))
        }
        Command::Covariance => {
            let s = setup(opts)?;
            let region = match s.ctx.a {
                Some(a) => a,
                None => lower_half(&s.space.domain())?,
            };
            let f = FunctionalSpec::parse(&opts.functional, &s.ctx)?;
            let report = covariance_identity(&s.space, &region, &f, n, &mc(opts)?)?;
            Ok(Output::report(report.with_note(format!("F = {f}"))))
        }
        Command::CountExact => {
            let lambda = poisson_lambda(opts)?;
            let rhs = count_integrand_exact(n)?;
            let lhs = bell_polynomial(2 * n);
            let report = IdentityReport::new(
                "count-exact",
                n,
                lambda,
                Side::Exact {
                    value: lhs.eval_f64(lambda),
                },
                Side::Exact {
                    value: rhs.eval_f64(lambda),
                },
                Tolerance::Absolute { tol: 0.0 },
            )
            .with_note(format!("B_{}(λ) = {}", 2 * n, lhs.display_in("λ")))
            .with_exact(ExactPolynomials::new(lhs, rhs));
            Ok(Output::report(report))
        }
    }
}

fn labelled(report: IdentityReport, u: &IntegrandSpec, f: &FunctionalSpec) -> IdentityReport {
    report.with_note(format!("u = {u}, F = {f}"))
}

fn deterministic(u: &IntegrandSpec) -> Result<&dyn poisson_moments::measure::DeterministicIntegrand> {
    u.as_deterministic().ok_or_else(|| {
        Error::InvalidParameter(format!("integrand {u} depends on ω; use a deterministic one"))
    })
}

/// `λ` for the count identities: `--lambda`, else the configured mass, else 1.
fn poisson_lambda(opts: &Opts) -> Result<f64> {
    if let Some(lambda) = opts.lambda {
        return Ok(lambda);
    }
    match &opts.config {
        Some(path) => Ok(SpaceConfig::load(path)?.build()?.total_mass()),
        None => Ok(1.0),
    }
}

fn lower_half(domain: &Interval) -> Result<Interval> {
    Interval::new(domain.lo(), 0.5 * (domain.lo() + domain.hi()))
}
