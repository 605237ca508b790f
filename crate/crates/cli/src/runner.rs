//! Dispatches scheme/power combinations, gathers their boundaries, and
//! drives the output writers.

use std::path::PathBuf;

use ansec::model::{db_to_linear, worst_case_eval, SystemConfig};
use ansec::perfect_region::{region_sweep, t1_bound};
use ansec::robust_region::{robust_region_sweep, t1_wc_bound, RobustSettings};
use ansec::suboptimal::{
    lower_bound_region, no_an_region, nonrobust_eval, power_split_region, tdma_region,
};
use ansec::{AnError, RegionResult};
use clap::ValueEnum;
use rayon::prelude::*;

use crate::output;
use crate::scenario::{load_scenario, Scenario};
use crate::{CliError, RunSpec};

/// Scheme selector exposed on the command line.
///
/// On a scenario with positive uncertainty radii, the baseline schemes
/// (`no-an`, `tdma`, `power-split`) switch to their worst-case variants;
/// `optimal` always solves the nominal channels and `robust` always solves
/// the worst case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum SchemeChoice {
    Optimal,
    Robust,
    PowerSplit,
    LowerBound,
    NoAn,
    Tdma,
    Nonrobust,
}

impl SchemeChoice {
    /// Stable name used in file names, the summary, and dominance pairs.
    pub fn label(self) -> &'static str {
        match self {
            SchemeChoice::Optimal => "optimal",
            SchemeChoice::Robust => "robust",
            SchemeChoice::PowerSplit => "power-split",
            SchemeChoice::LowerBound => "lower-bound",
            SchemeChoice::NoAn => "no-an",
            SchemeChoice::Tdma => "tdma",
            SchemeChoice::Nonrobust => "nonrobust",
        }
    }
}

/// Computed boundary of one scheme at one power.
pub struct ComboResult {
    pub scheme: SchemeChoice,
    pub power_db: f64,
    pub region: RegionResult,
    /// Per-point solver-call bound, for the schemes that define one.
    pub call_bound: Option<f64>,
    /// Smallest sampled-minus-certified worst-case secrecy margin over the
    /// boundary; present for worst-case schemes on robust scenarios.
    pub sampled_margin: Option<f64>,
}

/// One scheme/power combination that failed as a whole.
pub struct ComboFailure {
    pub scheme: SchemeChoice,
    pub power_db: f64,
    pub reason: String,
}

/// Everything `run` produced, with the process exit code it implies.
pub struct RunOutcome {
    /// 0 for full success, 2 when some grid points or combinations failed.
    pub exit_code: i32,
    pub summary_path: PathBuf,
    pub csv_paths: Vec<PathBuf>,
}

/// Uniform split-fraction grid reused for the power-splitting scheme.
fn rho_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn run_combo(
    choice: SchemeChoice,
    power_db: f64,
    scenario: &Scenario,
    spec: &RunSpec,
) -> Result<ComboResult, AnError> {
    let power = db_to_linear(power_db);
    let robust_scenario = scenario.channel_set.is_robust();
    let config = SystemConfig::new(
        scenario.channel_set.clone(),
        power,
        spec.eps,
        spec.eps_b,
        spec.grid_points,
    )?;
    let nominal = SystemConfig::new(
        scenario.channel_set.to_perfect(),
        power,
        spec.eps,
        spec.eps_b,
        spec.grid_points,
    )?;
    let settings = RobustSettings::from_config(&config);
    let baseline_config = if robust_scenario { &config } else { &nominal };

    let (region, call_bound) = match choice {
        SchemeChoice::Optimal => (region_sweep(&nominal)?, Some(t1_bound(&nominal) + 1.0)),
        SchemeChoice::Robust => (
            robust_region_sweep(&config, &settings)?,
            Some(t1_wc_bound(&config, &settings)),
        ),
        SchemeChoice::NoAn => {
            let bound = if robust_scenario {
                t1_wc_bound(&config, &settings)
            } else {
                t1_bound(&nominal) + 1.0
            };
            (no_an_region(baseline_config, robust_scenario)?, Some(bound))
        }
        SchemeChoice::Tdma => (tdma_region(baseline_config, robust_scenario)?, None),
        SchemeChoice::PowerSplit => (
            power_split_region(baseline_config, robust_scenario, &rho_grid(spec.grid_points))?,
            None,
        ),
        SchemeChoice::LowerBound => (lower_bound_region(&config, &settings)?, None),
        SchemeChoice::Nonrobust => (nonrobust_eval(&config)?, None),
    };

    // Zero-covariance boundaries (time sharing) have nothing to sample.
    let sample_worthy = robust_scenario
        && matches!(
            choice,
            SchemeChoice::Robust
                | SchemeChoice::LowerBound
                | SchemeChoice::NoAn
                | SchemeChoice::PowerSplit
                | SchemeChoice::Nonrobust
        );
    let sampled_margin = sample_worthy.then(|| {
        region
            .points
            .iter()
            .map(|p| {
                let sampled = worst_case_eval(&p.triple, &config.channel_set, 1000, spec.seed);
                sampled.secrecy_rate - p.secrecy_rate
            })
            .fold(f64::INFINITY, f64::min)
    });

    Ok(ComboResult {
        scheme: choice,
        power_db,
        region,
        call_bound,
        sampled_margin,
    })
}

/// Runs every scheme/power combination of the request and writes one CSV
/// per combination plus `summary.json` into the output directory.
pub fn run(spec: &RunSpec) -> Result<RunOutcome, CliError> {
    if spec.schemes.is_empty() {
        return Err(CliError::Usage("at least one scheme is required".into()));
    }
    if spec.powers_db.is_empty() {
        return Err(CliError::Usage("at least one power is required".into()));
    }
    if let Some(bad) = spec.powers_db.iter().find(|p| !p.is_finite()) {
        return Err(CliError::Usage(format!("power {bad} dB is not finite")));
    }
    if spec.workers == 0 {
        return Err(CliError::Usage("worker count must be at least 1".into()));
    }
    let mut schemes = Vec::new();
    for &s in &spec.schemes {
        if !schemes.contains(&s) {
            schemes.push(s);
        }
    }

    let scenario = load_scenario(&spec.scenario)?;
    std::fs::create_dir_all(&spec.out_dir).map_err(|e| CliError::Output {
        path: spec.out_dir.display().to_string(),
        message: e.to_string(),
    })?;

    let combos: Vec<(SchemeChoice, f64)> = schemes
        .iter()
        .flat_map(|&s| spec.powers_db.iter().map(move |&p| (s, p)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    let outcomes: Vec<Result<ComboResult, AnError>> = pool.install(|| {
        combos
            .par_iter()
            .map(|&(s, p)| run_combo(s, p, &scenario, spec))
            .collect()
    });

    let mut results = Vec::new();
    let mut combo_failures = Vec::new();
    for ((scheme, power_db), outcome) in combos.into_iter().zip(outcomes) {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => combo_failures.push(ComboFailure {
                scheme,
                power_db,
                reason: e.to_string(),
            }),
        }
    }

    let mut csv_paths = Vec::new();
    for r in &results {
        csv_paths.push(output::write_region_csv(r, &spec.out_dir)?);
        if spec.dump_covariances {
            output::write_covariances(r, &spec.out_dir)?;
        }
    }

    let partial = !combo_failures.is_empty()
        || results.iter().any(|r| !r.region.failures.is_empty());
    let exit_code = if partial { 2 } else { 0 };
    let summary_path = output::write_summary(
        spec,
        &scenario,
        &results,
        &combo_failures,
        exit_code,
        &spec.out_dir,
    )?;

    Ok(RunOutcome {
        exit_code,
        summary_path,
        csv_paths,
    })
}
