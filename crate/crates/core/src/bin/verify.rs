use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hecke_duality::cli::{list_checks, run_scenario, RunOptions, Scenario, Status};

/// Run a verification scenario and write its JSON report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// Scenario file (TOML).
    #[arg(required_unless_present = "list_checks")]
    scenario: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the weight window, as `lo:hi`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Print the check catalog and exit.
    #[arg(long)]
    list_checks: bool,
    /// Record per-check wall-clock time (reports stop being reproducible).
    #[arg(long)]
    timings: bool,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_checks {
        for c in list_checks() {
            println!("{:<26} {:<9} {:<22} {}", c.id, c.suite.name(), c.anchor, c.summary);
        }
        return ExitCode::SUCCESS;
    }
    let path = args.scenario.expect("clap enforces the scenario argument");
    let scenario = match Scenario::from_file(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("verify: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions { seed: args.seed, window: args.window, timings: args.timings, jobs: args.jobs };
    let report = match run_scenario(&scenario, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        eprintln!("{tag}  {}", c.id);
    }
    let json = report.to_json();
    match &args.report {
        Some(out) => {
            if let Err(e) = std::fs::write(out, json) {
                eprintln!("verify: {}: {e}", out.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
