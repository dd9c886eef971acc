//! Drives the runner from code and prints a Markdown summary.
//!
//! cargo run --example sweep_report

use ttw_dihedral::runner::{self, OutputFormat, RunConfig};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig {
        k_min: 1,
        k_max: 4,
        n_samples: 200,
        ..RunConfig::default()
    };
    let report = runner::run(&config)?;
    print!("{}", runner::emit(&report, OutputFormat::Markdown));
    println!("exit code would be {}", report.exit_code());
    if report.exit_code() != 0 {
        return Err("sweep reported failures".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("sweep_report");
}
