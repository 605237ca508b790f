//! Command-line entry point for the region solvers.

use std::path::PathBuf;
use std::process::ExitCode;

use ansec_cli::{run, RunSpec, SchemeChoice};
use clap::error::ErrorKind;
use clap::Parser;

/// Compute achievable secrecy-rate region boundaries for one scenario.
#[derive(Parser, Debug)]
#[command(name = "ansec", version, about)]
struct Args {
    /// Scenario TOML file with the channel geometry.
    #[arg(long)]
    scenario: PathBuf,

    /// Schemes to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    schemes: Vec<SchemeChoice>,

    /// Transmit powers in dB, comma separated.
    #[arg(long = "power-db", value_delimiter = ',', default_value = "20")]
    power_db: Vec<f64>,

    /// Grid points per boundary sweep.
    #[arg(long, default_value_t = 25)]
    grid: usize,

    /// Outer-search accuracy in bits.
    #[arg(long, default_value_t = 0.2)]
    eps: f64,

    /// Inner bisection tolerance of the worst-case solvers.
    #[arg(long = "eps-b", default_value_t = 1e-3)]
    eps_b: f64,

    /// Seed of the sampled certificate checks reported in the summary.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output directory for the CSV and JSON files.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Also write per-point covariance matrices as JSON.
    #[arg(long)]
    dump_covariances: bool,

    /// Worker threads for concurrent scheme/power combinations; defaults to
    /// the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };

    let workers = args.workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(usize::from)
            .unwrap_or(1)
    });
    let spec = RunSpec {
        scenario: args.scenario,
        schemes: args.schemes,
        powers_db: args.power_db,
        grid_points: args.grid,
        eps: args.eps,
        eps_b: args.eps_b,
        seed: args.seed,
        out_dir: args.out,
        dump_covariances: args.dump_covariances,
        workers,
    };

    match run(&spec) {
        Ok(outcome) => {
            for path in &outcome.csv_paths {
                println!("wrote {}", path.display());
            }
            println!("wrote {}", outcome.summary_path.display());
            if outcome.exit_code != 0 {
                eprintln!("ansec: some points failed; see the summary for details");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("ansec: {e}");
            ExitCode::from(1)
        }
    }
}
