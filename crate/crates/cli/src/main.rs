use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use confcalc::{list_suites, run, ConfigError, ExperimentConfig, Suite};

/// Runs a verification suite and writes report.json plus grid CSVs.
#[derive(Parser, Debug)]
#[command(name = "confcalc", version)]
struct Args {
    /// Suite to run; see --list.
    #[arg(required_unless_present = "list")]
    suite: Option<String>,
    /// TOML configuration file.
    #[arg(long, required_unless_present = "list")]
    config: Option<PathBuf>,
    /// Output directory (default: output.dir from the config, else ./confcalc-out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized trials.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative step of the point derivatives.
    #[arg(long)]
    eta0: Option<f64>,
    /// Tolerance overriding every residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Print the available suites and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for (name, desc) in list_suites() {
            println!("{name:<18} {desc}");
        }
        return ExitCode::SUCCESS;
    }
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("confcalc: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(args: &Args) -> Result<bool, ConfigError> {
    let suite = Suite::from_name(args.suite.as_deref().unwrap_or_default())?;
    let path = args.config.as_ref().expect("required by clap");
    let cfg = ExperimentConfig::load(path)?.with_overrides(args.seed, args.eta0, args.tol)?;
    let out = args.out.clone().or_else(|| cfg.output.dir.clone()).unwrap_or_else(|| PathBuf::from("confcalc-out"));
    let result = run(suite, &cfg, &out)?;
    let passed = result.report.checks.iter().filter(|c| c.pass).count();
    for c in result.report.checks.iter().filter(|c| !c.pass) {
        match &c.error {
            Some(e) => println!("FAIL {}: {e}", c.name),
            None => println!("FAIL {}: residual {:.3e} > tol {:.1e}", c.name, c.residual, c.tol),
        }
    }
    println!(
        "{}: {passed}/{} checks passed; report at {}",
        result.report.suite,
        result.report.checks.len(),
        result.report_path.display()
    );
    Ok(result.report.pass)
}
