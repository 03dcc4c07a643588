use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use damped_rhs::cli::{exit_code, run, Experiment, RunConfig, RunError, RunOptions};

/// Runs an experiment or the verification suite and writes CSV tables and a
/// JSON report.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// TOML run configuration; built-in defaults when absent.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// verify, expand, evolve, reconstruct, residues, hardy or classical.
    #[arg(long, value_name = "NAME")]
    experiment: Option<String>,
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Multiplies every check tolerance.
    #[arg(long, value_name = "FACTOR", default_value_t = 1.0)]
    tolerance_scale: f64,
}

fn main_inner(args: Args) -> Result<i32, RunError> {
    let config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let experiment = args.experiment.as_deref().map(Experiment::parse).transpose()?;
    let opts = RunOptions {
        experiment,
        out: args.out,
        seed: args.seed,
        jobs: args.jobs,
        tolerance_scale: args.tolerance_scale,
    };
    let report = run(&config, &opts)?;
    let s = report.summary;
    println!(
        "{}: {} checks, {} passed, {} failed; report in {}",
        report.experiment,
        s.total,
        s.passed,
        s.failed,
        opts.out.join("report.json").display()
    );
    for e in report.entries.iter().filter(|e| !e.pass) {
        println!(
            "FAIL {} abs_err {:e} tolerance {:e}",
            e.check_id, e.abs_err, e.tolerance
        );
    }
    Ok(exit_code(&report))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
