//! Output writers: per-combination CSV boundaries, optional covariance
//! dumps, and the JSON run summary. Every file is written atomically via a
//! temporary file in the target directory.

use std::io::Write;
use std::path::{Path, PathBuf};

use ansec::RatePoint;
use sdp::HermitianMatrix;
use serde::Serialize;

use crate::runner::{ComboFailure, ComboResult};
use crate::scenario::Scenario;
use crate::{CliError, RunSpec};

/// Slack below which a dominance comparison counts as violated; one inner
/// bisection step of headroom on top of the shared 1e-4 grid slack.
fn dominance_tolerance(spec: &RunSpec) -> f64 {
    spec.eps_b + 1e-4
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let to_err = |message: String| CliError::Output {
        path: path.display().to_string(),
        message,
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .map_err(|e| to_err(e.to_string()))?;
    tmp.write_all(bytes).map_err(|e| to_err(e.to_string()))?;
    tmp.persist(path).map_err(|e| to_err(e.error.to_string()))?;
    Ok(())
}

/// File stem for one scheme/power combination, such as `optimal_p20`.
fn combo_stem(result: &ComboResult) -> String {
    format!("{}_p{}", result.scheme.label(), result.power_db)
}

fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

/// Writes the boundary CSV for one combination and returns its path.
///
/// Solved points and failed grid points share the row set, ordered by
/// multicast floor; failed rows leave the numeric columns empty and carry
/// the failure reason in `status`.
pub fn write_region_csv(result: &ComboResult, out_dir: &Path) -> Result<PathBuf, CliError> {
    let path = out_dir.join(format!("{}.csv", combo_stem(result)));
    enum Row<'a> {
        Point(&'a RatePoint),
        Failure(&'a ansec::PointFailure),
    }
    let mut rows: Vec<Row> = result.region.points.iter().map(Row::Point).collect();
    rows.extend(result.region.failures.iter().map(Row::Failure));
    rows.sort_by(|a, b| {
        let tau = |r: &Row| match r {
            Row::Point(p) => p.tau_ms,
            Row::Failure(f) => f.tau_ms,
        };
        tau(a).total_cmp(&tau(b))
    });

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "tau_ms",
            "secrecy_rate",
            "multicast_rate_achieved",
            "qoms_slack",
            "rank_ratio_Qc",
            "rank_ratio_Q0",
            "rank_ratio_Qa",
            "solver_calls",
            "status",
        ])
        .and_then(|_| {
            for row in &rows {
                match row {
                    Row::Point(p) => writer.write_record([
                        sig9(p.tau_ms),
                        sig9(p.secrecy_rate),
                        sig9(p.multicast_rate),
                        sig9(p.diagnostics.qoms_slack),
                        sig9(p.diagnostics.rank_ratio_qc),
                        sig9(p.diagnostics.rank_ratio_q0),
                        sig9(p.diagnostics.rank_ratio_qa),
                        p.diagnostics.solver_calls.to_string(),
                        "ok".into(),
                    ])?,
                    Row::Failure(f) => writer.write_record([
                        sig9(f.tau_ms),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        format!("failed: {}", f.reason),
                    ])?,
                }
            }
            Ok(())
        })
        .map_err(|e| CliError::Output {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    let bytes = writer.into_inner().map_err(|e| CliError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    write_atomic(&path, &bytes)?;
    Ok(path)
}

#[derive(Serialize)]
struct MatrixDump {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl MatrixDump {
    fn from_matrix(m: &HermitianMatrix) -> Self {
        let n = m.dim();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j);
                re[i][j] = v.re;
                im[i][j] = v.im;
            }
        }
        MatrixDump { re, im }
    }
}

#[derive(Serialize)]
struct PointDump {
    tau_ms: f64,
    q0: MatrixDump,
    qc: MatrixDump,
    qa: MatrixDump,
}

/// Writes the per-point covariance matrices of one combination as JSON.
pub fn write_covariances(result: &ComboResult, out_dir: &Path) -> Result<PathBuf, CliError> {
    let path = out_dir.join(format!("{}_covariances.json", combo_stem(result)));
    let dump: Vec<PointDump> = result
        .region
        .points
        .iter()
        .map(|p| PointDump {
            tau_ms: p.tau_ms,
            q0: MatrixDump::from_matrix(&p.triple.q0),
            qc: MatrixDump::from_matrix(&p.triple.qc),
            qa: MatrixDump::from_matrix(&p.triple.qa),
        })
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&dump).expect("covariance dump serializes");
    bytes.push(b'\n');
    write_atomic(&path, &bytes)?;
    Ok(path)
}

#[derive(Serialize)]
struct ScenarioEcho {
    path: String,
    n_tx: usize,
    receivers: usize,
    radii: Vec<f64>,
    robust: bool,
}

#[derive(Serialize)]
struct RunEcho {
    schemes: Vec<&'static str>,
    powers_db: Vec<f64>,
    grid_points: usize,
    eps: f64,
    eps_b: f64,
    seed: u64,
    workers: usize,
    dump_covariances: bool,
}

#[derive(Serialize)]
struct ComboEcho {
    scheme: &'static str,
    power_db: f64,
    csv: String,
    tau_max: f64,
    points: usize,
    failed_points: usize,
    total_solver_calls: usize,
    max_point_solver_calls: usize,
    solver_call_bound: Option<f64>,
    within_budget: Option<bool>,
    sampled_secrecy_margin: Option<f64>,
}

#[derive(Serialize)]
struct FailureEcho {
    scheme: &'static str,
    power_db: f64,
    reason: String,
}

#[derive(Serialize)]
struct DominanceEcho {
    power_db: f64,
    lower: &'static str,
    upper: &'static str,
    min_slack: f64,
    tolerance: f64,
    holds: bool,
}

#[derive(Serialize)]
struct Summary {
    scenario: ScenarioEcho,
    run: RunEcho,
    combos: Vec<ComboEcho>,
    combo_failures: Vec<FailureEcho>,
    dominance: Vec<DominanceEcho>,
    exit_code: i32,
}

/// Piecewise-linear secrecy value of a sorted boundary at floor `tau`.
///
/// Linear interpolation under-estimates a concave boundary, keeping the
/// dominance slacks conservative for the upper curve.
fn interp_secrecy(points: &[RatePoint], tau: f64) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    if tau <= points[0].tau_ms {
        return points[0].secrecy_rate;
    }
    for w in points.windows(2) {
        if tau <= w[1].tau_ms + 1e-12 {
            let span = (w[1].tau_ms - w[0].tau_ms).max(1e-15);
            let t = ((tau - w[0].tau_ms) / span).clamp(0.0, 1.0);
            return w[0].secrecy_rate + t * (w[1].secrecy_rate - w[0].secrecy_rate);
        }
    }
    points[points.len() - 1].secrecy_rate
}

/// Expected region orderings: `(lower, upper, robust_scenario_only)`.
///
/// The last flag marks pairs whose lower scheme only sits inside the upper
/// region when both solve the same worst-case problem.
const DOMINANCE_PAIRS: [(&str, &str, bool); 9] = [
    ("power-split", "optimal", false),
    ("no-an", "optimal", false),
    ("tdma", "no-an", false),
    ("tdma", "optimal", false),
    ("robust", "optimal", false),
    ("nonrobust", "optimal", false),
    ("lower-bound", "robust", false),
    ("no-an", "robust", true),
    ("power-split", "robust", true),
];

fn dominance_checks(
    spec: &RunSpec,
    scenario: &Scenario,
    results: &[ComboResult],
) -> Vec<DominanceEcho> {
    let tolerance = dominance_tolerance(spec);
    let robust_scenario = scenario.channel_set.is_robust();
    let mut checks = Vec::new();
    for &power_db in &spec.powers_db {
        let at_power = |label: &str| {
            results
                .iter()
                .find(|r| r.power_db == power_db && r.scheme.label() == label)
        };
        for &(lower, upper, robust_only) in &DOMINANCE_PAIRS {
            if robust_only && !robust_scenario {
                continue;
            }
            let (Some(lo), Some(hi)) = (at_power(lower), at_power(upper)) else {
                continue;
            };
            let min_slack = lo
                .region
                .points
                .iter()
                .map(|p| interp_secrecy(&hi.region.points, p.tau_ms) - p.secrecy_rate)
                .fold(f64::INFINITY, f64::min);
            checks.push(DominanceEcho {
                power_db,
                lower,
                upper,
                min_slack,
                tolerance,
                holds: min_slack >= -tolerance,
            });
        }
    }
    checks
}

/// Writes `summary.json` and returns its path.
pub fn write_summary(
    spec: &RunSpec,
    scenario: &Scenario,
    results: &[ComboResult],
    combo_failures: &[ComboFailure],
    exit_code: i32,
    out_dir: &Path,
) -> Result<PathBuf, CliError> {
    let path = out_dir.join("summary.json");
    let cs = &scenario.channel_set;
    let summary = Summary {
        scenario: ScenarioEcho {
            path: scenario.path.clone(),
            n_tx: cs.n_tx(),
            receivers: cs.k(),
            radii: (0..cs.k()).map(|k| cs.radius(k)).collect(),
            robust: cs.is_robust(),
        },
        run: RunEcho {
            schemes: spec.schemes.iter().map(|s| s.label()).collect(),
            powers_db: spec.powers_db.clone(),
            grid_points: spec.grid_points,
            eps: spec.eps,
            eps_b: spec.eps_b,
            seed: spec.seed,
            workers: spec.workers,
            dump_covariances: spec.dump_covariances,
        },
        combos: results
            .iter()
            .map(|r| {
                let max_calls = r
                    .region
                    .points
                    .iter()
                    .map(|p| p.diagnostics.solver_calls)
                    .max()
                    .unwrap_or(0);
                ComboEcho {
                    scheme: r.scheme.label(),
                    power_db: r.power_db,
                    csv: format!("{}.csv", combo_stem(r)),
                    tau_max: r.region.tau_max,
                    points: r.region.points.len(),
                    failed_points: r.region.failures.len(),
                    total_solver_calls: r.region.total_solver_calls,
                    max_point_solver_calls: max_calls,
                    solver_call_bound: r.call_bound,
                    within_budget: r.call_bound.map(|b| (max_calls as f64) <= b),
                    sampled_secrecy_margin: r.sampled_margin,
                }
            })
            .collect(),
        combo_failures: combo_failures
            .iter()
            .map(|f| FailureEcho {
                scheme: f.scheme.label(),
                power_db: f.power_db,
                reason: f.reason.clone(),
            })
            .collect(),
        dominance: dominance_checks(spec, scenario, results),
        exit_code,
    };
    let mut bytes = serde_json::to_vec_pretty(&summary).expect("summary serializes");
    bytes.push(b'\n');
    write_atomic(&path, &bytes)?;
    Ok(path)
}
