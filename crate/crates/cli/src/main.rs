use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use poisson_moments::Error;

mod commands;
mod output;

use output::Output;

/// Check moment identities for Poisson stochastic integrals.
///
/// Every subcommand writes one JSON document (or CSV table) to stdout or to
/// `--out`. Exit status: 0 when the checked identity holds, 1 when it is
/// violated, 2 on usage errors.
#[derive(Debug, Parser)]
#[command(name = "poisson-moments", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of the Bell polynomial B_n(λ).
    Bell,
    /// Row n of the Stirling numbers S(n,k) and S₂(n,k) (no singletons).
    Stirling,
    /// Partition profiles of an n-set with their counts.
    Partitions {
        /// Also list every set partition (n ≤ 12).
        #[arg(long)]
        list: bool,
    },
    /// E[(∫ u dω)^n] for a deterministic registry integrand.
    MomentDet,
    /// E[(∫ u (dω − dσ))^n] for a deterministic registry integrand.
    MomentCentered,
    /// Monte Carlo check of E[F (∫ u dω)^n] against its partition sum.
    VerifyRandom,
    /// Monte Carlo check of E[F δ(u)^n] against its partition sum.
    VerifySkorohod,
    /// Monte Carlo check of the compensated moment expansion.
    VerifyCompensated,
    /// E[Z^n f(Z)] = Σ_k λ^k S(n,k) E[f(Z+k)] for Z ~ Poisson(λ).
    ChenStein,
    /// E[f(Z) e^{tZ}] = Σ_k (λ^k/k!) (e^t − 1)^k E[f(Z+k)].
    ExpIdentity,
    /// Cov(F, ω(A)^n) against its Stirling expansion.
    Covariance,
    /// Exact check that u_x(ω) = ω(X) has E[(∫ u dω)^n] = B_{2n}(λ).
    CountExact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
struct Opts {
    /// Moment order.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Total mass σ(X); overrides the config file.
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Integrand registry id (indicator, linear, count, count-times-f, poly-of-count:c0,c1,..).
    #[arg(long, global = true)]
    u: Option<String>,
    /// Functional registry id (one, count[:A|:B], count-squared[:A|:B], poly-of-count:..).
    #[arg(long = "F", global = true, default_value = "one")]
    functional: String,
    /// Count function for chen-stein and exp-identity (poly:c0,c1,.. or exp:rate).
    #[arg(long = "f", global = true, default_value = "poly:1")]
    count_function: String,
    /// Exponent parameter t of exp-identity.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    /// Set A as `lo,hi`.
    #[arg(long = "A", global = true)]
    a: Option<String>,
    /// Set B as `lo,hi`.
    #[arg(long = "B", global = true)]
    b: Option<String>,
    /// Fixed truncation index of the exp-identity k-sum (automatic if unset).
    #[arg(long = "K", global = true)]
    k: Option<usize>,
    /// Monte Carlo replicates.
    #[arg(long, global = true, default_value_t = 100_000)]
    replicates: usize,
    /// Monte Carlo seed.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Agreement threshold in combined standard errors.
    #[arg(long, global = true, default_value_t = 3.0)]
    multiplier: f64,
    /// TOML file describing the measure space.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn emit(output: &Output, opts: &Opts) -> Result<(), String> {
    let text = match opts.format {
        Format::Json => output.to_json(),
        Format::Csv => output.to_csv(),
    }
    .map_err(|e| format!("cannot render output: {e}"))?;
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = commands::run(&cli.command, &cli.opts);
    match result {
        Ok(output) => {
            if let Err(msg) = emit(&output, &cli.opts) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            match output.verdict() {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Error::IdentityViolation(msg)) => {
            eprintln!("identity violated: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
