//! Command-line sweep over every registered check.
//!
//! Exit codes: 0 when all asserted checks pass, 1 when any fails, 2 on a
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ttw_dihedral::runner::{self, parse_couplings, OutputFormat, RunConfig};
use ttw_dihedral::Error;

#[derive(Debug, Parser)]
#[command(
    name = "ttw-verify",
    version,
    about = "Verify dihedral and supersymmetric TTW operator identities"
)]
struct Cli {
    /// key=value file applied before the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k_min: Option<u32>,
    #[arg(long)]
    k_max: Option<u32>,
    /// Only run odd k
    #[arg(long)]
    odd_only: bool,
    #[arg(long)]
    samples: Option<usize>,
    /// Relative tolerance of the sampled checks
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    omega: Option<f64>,
    /// Coupling grid as "a1:b1,a2:b2,..."
    #[arg(long)]
    couplings: Option<String>,
    /// Restrict to a check id; repeatable
    #[arg(long = "check")]
    checks: Vec<String>,
    #[arg(long, value_parser = ["json", "markdown"])]
    format: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_key_values(&text)?;
    }
    if let Some(v) = cli.k_min {
        cfg.k_min = v;
    }
    if let Some(v) = cli.k_max {
        cfg.k_max = v;
    }
    if cli.odd_only {
        cfg.odd_only = true;
    }
    if let Some(v) = cli.samples {
        cfg.n_samples = v;
    }
    if let Some(v) = cli.tolerance {
        cfg.tolerance = v;
    }
    if let Some(v) = cli.seed {
        cfg.rng_seed = v;
    }
    if let Some(v) = cli.omega {
        cfg.omega = v;
    }
    if let Some(v) = &cli.couplings {
        cfg.coupling_grid = parse_couplings(v)?;
    }
    if !cli.checks.is_empty() {
        cfg.checks.clone_from(&cli.checks);
    }
    if let Some(v) = &cli.format {
        cfg.output_format = v.parse::<OutputFormat>()?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match build_config(&cli).and_then(|cfg| runner::run(&cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = runner::emit(&report, report.config.output_format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    eprintln!(
        "{} pass, {} fail, {} expected-failure in {:.2}s",
        report.summary.pass, report.summary.fail, report.summary.expected_failure, report.wall_time
    );
    ExitCode::from(report.exit_code() as u8)
}
