//! Secrecy-rate region boundary under perfect channel knowledge.
//!
//! Each boundary point fixes a QoMS floor `tau_ms` and maximizes the secrecy
//! rate of the confidential stream. With the eavesdroppers' SNR capped by an
//! auxiliary level `alpha`, the remaining problem is linear-fractional in the
//! covariances and a Charnes-Cooper substitution turns it into a single SDP
//! ([`inner_sdp`]). A uniform grid over `alpha` with spacing `2^eps - 1`
//! finishes the outer search with an `eps`-bit accuracy guarantee, and a
//! final power-minimizing solve polishes the winning design. [`region_sweep`]
//! repeats this across a grid of QoMS targets up to the multicast capacity.

use crate::model::{rates, CovarianceTriple, SystemConfig};
use crate::{AnError, Diagnostics, PointFailure, RatePoint, RegionResult, Scheme};
use rayon::prelude::*;
use sdp::{HermitianMatrix, LinExpr, SdpProblem, SolveSettings, SolveStatus};

/// Lower bound on the Charnes-Cooper scale variable, keeping the covariance
/// recovery division well defined.
const XI_FLOOR: f64 = 1e-9;

/// Relative slack applied to a level before re-solving feasibility at it, so
/// the polished problem keeps a strict interior.
const LEVEL_RELIEF: f64 = 1e-9;

fn settings() -> SolveSettings {
    SolveSettings::default()
}

fn identity_neg(dim: usize) -> HermitianMatrix {
    HermitianMatrix::scaled_identity(dim, -1.0)
}

/// Largest multicast rate that can be guaranteed to every receiver with the
/// full power budget, together with an input covariance achieving it.
pub fn multicast_capacity(config: &SystemConfig) -> Result<(f64, HermitianMatrix), AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let mut prob = SdpProblem::new();
    let q0 = prob.hermitian_var(n);
    let t = prob.scalar_var();
    for k in 0..cs.k() {
        prob.add_ineq_ge(
            LinExpr::zero()
                .plus_quad(cs.channel(k), q0)
                .plus_scalar(-1.0, t),
        );
    }
    prob.add_ineq_ge(LinExpr::constant(config.power).plus_trace(identity_neg(n), q0));
    prob.set_objective(LinExpr::zero().plus_scalar(1.0, t));
    let sol = sdp::solve(&prob, &settings());
    if !sol.is_optimal() {
        return Err(AnError::Solver(format!(
            "multicast capacity solve ended with {:?}",
            sol.status
        )));
    }
    let t_star = sol.scalar_value(t).unwrap().max(0.0);
    Ok(((1.0 + t_star).log2(), sol.hermitian_value(q0).unwrap()))
}

/// Optimal Charnes-Cooper variables of the inner problem at one `alpha`.
#[derive(Debug, Clone)]
pub struct InnerSolution {
    pub z: HermitianMatrix,
    pub gamma: HermitianMatrix,
    pub phi: HermitianMatrix,
    pub xi: f64,
    /// Optimal value: the legitimate-to-eavesdropper power ratio at level
    /// `alpha`; the secrecy rate is `log2(eta)`.
    pub eta: f64,
    pub alpha: f64,
    /// Covariances recovered by undoing the substitution (division by `xi`).
    pub triple: CovarianceTriple,
}

/// Solves the inner secrecy-rate problem at a fixed eavesdropper level
/// `alpha` and QoMS SINR floor `tau_prime` via the Charnes-Cooper SDP.
///
/// Returns `Ok(None)` when the constraint set is certified empty.
pub fn inner_sdp(
    alpha: f64,
    tau_prime: f64,
    config: &SystemConfig,
) -> Result<Option<InnerSolution>, AnError> {
    inner_sdp_impl(alpha, tau_prime, config, true)
}

pub(crate) fn inner_sdp_impl(
    alpha: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<Option<InnerSolution>, AnError> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(AnError::Validation(format!(
            "alpha must be >= 1, got {alpha}"
        )));
    }
    if !(tau_prime >= 0.0) || !tau_prime.is_finite() {
        return Err(AnError::Validation(format!(
            "tau_prime must be >= 0, got {tau_prime}"
        )));
    }
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let h1 = cs.channel(0);

    let mut prob = SdpProblem::new();
    let z = prob.hermitian_var(n);
    let gamma = if use_an { Some(prob.hermitian_var(n)) } else { None };
    let phi = prob.hermitian_var(n);
    let xi = prob.scalar_var();
    prob.add_ineq_ge(LinExpr::constant(-XI_FLOOR).plus_scalar(1.0, xi));

    // Denominator normalization: alpha * (xi + h1 Gamma h1^H) == 1.
    let mut norm = LinExpr::constant(-1.0).plus_scalar(alpha, xi);
    if let Some(g) = gamma {
        norm = norm.plus_trace(HermitianMatrix::outer(h1).scaled(alpha), g);
    }
    prob.add_eq(norm);

    // Eavesdropper SNR caps: (alpha-1)(xi + hk Gamma hk^H) >= hk Z hk^H.
    for k in 1..cs.k() {
        let hk = cs.channel(k);
        let mut e = LinExpr::zero()
            .plus_scalar(alpha - 1.0, xi)
            .plus_trace(HermitianMatrix::outer(hk).scaled(-1.0), z);
        if let Some(g) = gamma {
            e = e.plus_trace(HermitianMatrix::outer(hk).scaled(alpha - 1.0), g);
        }
        prob.add_ineq_ge(e);
    }

    // QoMS floors: hk Phi hk^H >= tau_prime * (xi + hk (Gamma + Z) hk^H).
    for k in 0..cs.k() {
        let hk = cs.channel(k);
        let mut q = LinExpr::zero()
            .plus_quad(hk, phi)
            .plus_scalar(-tau_prime, xi)
            .plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime), z);
        if let Some(g) = gamma {
            q = q.plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime), g);
        }
        prob.add_ineq_ge(q);
    }

    // Power: Tr(Phi + Gamma + Z) <= P * xi.
    let mut pw = LinExpr::zero()
        .plus_scalar(config.power, xi)
        .plus_trace(identity_neg(n), z)
        .plus_trace(identity_neg(n), phi);
    if let Some(g) = gamma {
        pw = pw.plus_trace(identity_neg(n), g);
    }
    prob.add_ineq_ge(pw);

    // Numerator after normalization: xi + h1 (Z + Gamma) h1^H.
    let mut obj = LinExpr::zero().plus_scalar(1.0, xi).plus_quad(h1, z);
    if let Some(g) = gamma {
        obj = obj.plus_quad(h1, g);
    }
    prob.set_objective(obj);

    let sol = sdp::solve(&prob, &settings());
    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => return Ok(None),
        other => {
            return Err(AnError::Solver(format!(
                "inner SDP at alpha {alpha} ended with {other:?}"
            )))
        }
    }
    let z_v = sol.hermitian_value(z).unwrap();
    let gamma_v = gamma
        .map(|g| sol.hermitian_value(g).unwrap())
        .unwrap_or_else(|| HermitianMatrix::zeros(n));
    let phi_v = sol.hermitian_value(phi).unwrap();
    let xi_v = sol.scalar_value(xi).unwrap().max(XI_FLOOR);
    let eta = sol.objective.unwrap();
    let inv = 1.0 / xi_v;
    let triple = CovarianceTriple::from_solver(
        &phi_v.scaled(inv),
        &z_v.scaled(inv),
        &gamma_v.scaled(inv),
    );
    Ok(Some(InnerSolution {
        z: z_v,
        gamma: gamma_v,
        phi: phi_v,
        xi: xi_v,
        eta,
        alpha,
        triple,
    }))
}

/// Feasibility of the level-`t` restriction of the inner problem, decided
/// through a maximal-margin solve.
fn level_feasible(
    t: f64,
    alpha: f64,
    tau_prime: f64,
    config: &SystemConfig,
) -> Result<bool, AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let h1 = cs.channel(0);
    let mut prob = SdpProblem::new();
    let q0 = prob.hermitian_var(n);
    let qc = prob.hermitian_var(n);
    let qa = prob.hermitian_var(n);
    let m = prob.free_var();

    // Every row is divided by its coefficient magnitude before the shared
    // margin is subtracted; high levels otherwise mix O(t alpha P) rows with
    // O(1) rows and stall the interior-point method. Positive scaling leaves
    // the feasibility sign unchanged.
    let row_scale = |raw: f64| raw.max(1.0).recip();

    // Objective ratio at level t: 1 + h1(Qc+Qa)h1 >= t*alpha*(1 + h1 Qa h1).
    let c1 = 1.0 - t * alpha;
    let s1 = row_scale(c1.abs() * (1.0 + cs.norm_sq(0)) + cs.norm_sq(0));
    prob.add_ineq_ge(
        LinExpr::constant(c1 * s1)
            .plus_trace(HermitianMatrix::outer(h1).scaled(s1), qc)
            .plus_trace(HermitianMatrix::outer(h1).scaled(c1 * s1), qa)
            .plus_scalar(-1.0, m),
    );
    for k in 1..cs.k() {
        let hk = cs.channel(k);
        let sk = row_scale((alpha - 1.0) * (1.0 + cs.norm_sq(k)) + cs.norm_sq(k));
        prob.add_ineq_ge(
            LinExpr::constant((alpha - 1.0) * sk)
                .plus_trace(HermitianMatrix::outer(hk).scaled((alpha - 1.0) * sk), qa)
                .plus_trace(HermitianMatrix::outer(hk).scaled(-sk), qc)
                .plus_scalar(-1.0, m),
        );
    }
    for k in 0..cs.k() {
        let hk = cs.channel(k);
        let sk = row_scale(tau_prime * (1.0 + 2.0 * cs.norm_sq(k)) + cs.norm_sq(k));
        prob.add_ineq_ge(
            LinExpr::constant(-tau_prime * sk)
                .plus_trace(HermitianMatrix::outer(hk).scaled(sk), q0)
                .plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime * sk), qa)
                .plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime * sk), qc)
                .plus_scalar(-1.0, m),
        );
    }
    let sp = row_scale(config.power);
    prob.add_ineq_ge(
        LinExpr::constant(config.power * sp)
            .plus_trace(HermitianMatrix::scaled_identity(n, -sp), q0)
            .plus_trace(HermitianMatrix::scaled_identity(n, -sp), qc)
            .plus_trace(HermitianMatrix::scaled_identity(n, -sp), qa)
            .plus_scalar(-1.0, m),
    );
    prob.set_objective(LinExpr::zero().plus_scalar(1.0, m));
    let sol = sdp::solve(&prob, &settings());
    if !sol.is_optimal() {
        return Err(AnError::Solver(format!(
            "margin solve at level {t} ended with {:?}",
            sol.status
        )));
    }
    Ok(sol.objective.unwrap() >= -1e-9)
}

/// Independent route to the inner optimum: direct bisection on the
/// quasiconvex objective level with per-level feasibility solves.
///
/// Returns the same value as [`inner_sdp`]'s `eta` (to the bisection
/// resolution), or `None` when the QoMS floor is infeasible at this `alpha`.
pub fn quasiconvex_oracle(
    alpha: f64,
    tau_prime: f64,
    config: &SystemConfig,
) -> Result<Option<f64>, AnError> {
    let mut lo = 1.0 / alpha;
    if !level_feasible(lo, alpha, tau_prime, config)? {
        return Ok(None);
    }
    let mut hi = (1.0 + config.power * config.channel_set.norm_sq(0)) / alpha;
    if hi <= lo {
        return Ok(Some(lo));
    }
    while hi - lo > 1e-6 * lo {
        let mid = 0.5 * (lo + hi);
        if level_feasible(mid, alpha, tau_prime, config)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// Grid spacing of the outer `alpha` search for accuracy `eps` bits.
pub(crate) fn alpha_step(eps: f64) -> f64 {
    eps.exp2() - 1.0
}

/// Solve-count bound of the outer search: `P ||h1||^2 / (2^eps - 1)`.
pub fn t1_bound(config: &SystemConfig) -> f64 {
    config.power * config.channel_set.norm_sq(0) / alpha_step(config.search_epsilon)
}

fn alpha_grid(config: &SystemConfig) -> Vec<f64> {
    let delta = alpha_step(config.search_epsilon);
    let count = (t1_bound(config).floor() as usize).max(1);
    (1..=count).map(|j| 1.0 + delta * j as f64).collect()
}

/// One power-minimizing feasibility solve at a fixed level, used to polish
/// the design returned by the grid search. Drives the QoMS floor active and
/// sharpens low-rank structure.
fn power_min_polish(
    alpha: f64,
    eta_level: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<Option<CovarianceTriple>, AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let h1 = cs.channel(0);
    let level = eta_level * (1.0 - LEVEL_RELIEF);

    let mut prob = SdpProblem::new();
    let q0 = prob.hermitian_var(n);
    let qc = prob.hermitian_var(n);
    let qa = if use_an { Some(prob.hermitian_var(n)) } else { None };

    let mut sec = LinExpr::constant(1.0 - level * alpha).plus_quad(h1, qc);
    if let Some(a) = qa {
        sec = sec.plus_trace(HermitianMatrix::outer(h1).scaled(1.0 - level * alpha), a);
    }
    prob.add_ineq_ge(sec);

    for k in 1..cs.k() {
        let hk = cs.channel(k);
        let mut e = LinExpr::constant(alpha - 1.0)
            .plus_trace(HermitianMatrix::outer(hk).scaled(-1.0), qc);
        if let Some(a) = qa {
            e = e.plus_trace(HermitianMatrix::outer(hk).scaled(alpha - 1.0), a);
        }
        prob.add_ineq_ge(e);
    }
    for k in 0..cs.k() {
        let hk = cs.channel(k);
        let mut q = LinExpr::constant(-tau_prime)
            .plus_quad(hk, q0)
            .plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime), qc);
        if let Some(a) = qa {
            q = q.plus_trace(HermitianMatrix::outer(hk).scaled(-tau_prime), a);
        }
        prob.add_ineq_ge(q);
    }
    let mut pw = LinExpr::constant(config.power)
        .plus_trace(identity_neg(n), q0)
        .plus_trace(identity_neg(n), qc);
    if let Some(a) = qa {
        pw = pw.plus_trace(identity_neg(n), a);
    }
    prob.add_ineq_ge(pw);

    let mut obj = LinExpr::zero()
        .plus_trace(identity_neg(n), q0)
        .plus_trace(identity_neg(n), qc);
    if let Some(a) = qa {
        obj = obj.plus_trace(identity_neg(n), a);
    }
    prob.set_objective(obj);

    let sol = sdp::solve(&prob, &settings());
    if !sol.is_optimal() {
        return Ok(None);
    }
    let q0_v = sol.hermitian_value(q0).unwrap();
    let qc_v = sol.hermitian_value(qc).unwrap();
    let qa_v = qa
        .map(|a| sol.hermitian_value(a).unwrap())
        .unwrap_or_else(|| HermitianMatrix::zeros(n));
    Ok(Some(CovarianceTriple::from_solver(&q0_v, &qc_v, &qa_v)))
}

/// Eigenvalue ratios `lambda_2 / lambda_1` of `(Qc, Q0, Qa)`, each 0 for a
/// matrix carrying a negligible share of the transmitted power. A ratio at
/// or below [`crate::RANK_ONE_RATIO`] certifies effective rank one.
///
/// The zero test is relative to the combined trace of the triple: interior
/// point solves leave O(feasibility tolerance) dust in blocks whose optimal
/// value is zero, and the spectrum of that dust says nothing about rank.
pub fn rank_diagnostics(triple: &CovarianceTriple) -> (f64, f64, f64) {
    let scale = 1.0 + triple.q0.trace() + triple.qc.trace() + triple.qa.trace();
    let ratio = |m: &HermitianMatrix| -> f64 {
        let ev = m.eigenvalues();
        let top = ev[ev.len() - 1];
        if top <= 1e-7 * scale || ev.len() < 2 {
            return 0.0;
        }
        (ev[ev.len() - 2] / top).max(0.0)
    };
    (ratio(&triple.qc), ratio(&triple.q0), ratio(&triple.qa))
}

fn build_point(
    tau_ms: f64,
    tau_prime: f64,
    eta: f64,
    triple: CovarianceTriple,
    solver_calls: usize,
    config: &SystemConfig,
) -> RatePoint {
    let (rc, r0, ra) = rank_diagnostics(&triple);
    let breakdown = rates(&triple, &config.channel_set);
    RatePoint {
        tau_ms,
        tau_prime,
        secrecy_rate: eta.log2().max(0.0),
        multicast_rate: breakdown.multicast_rate,
        diagnostics: Diagnostics {
            rank_ratio_qc: rc,
            rank_ratio_q0: r0,
            rank_ratio_qa: ra,
            qoms_slack: breakdown.multicast_rate - tau_ms,
            solver_calls,
        },
        triple,
    }
}

pub(crate) fn qoms_srm_impl(
    tau_ms: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<RatePoint, AnError> {
    if !(tau_ms >= 0.0) || !tau_ms.is_finite() {
        return Err(AnError::Validation(format!(
            "tau_ms must be >= 0, got {tau_ms}"
        )));
    }
    let tau_prime = tau_ms.exp2() - 1.0;
    let grid = alpha_grid(config);
    let outcomes: Vec<Result<Option<InnerSolution>, AnError>> = grid
        .par_iter()
        .map(|&alpha| inner_sdp_impl(alpha, tau_prime, config, use_an))
        .collect();

    let mut best: Option<InnerSolution> = None;
    let mut first_err = None;
    let mut solves = 0usize;
    for outcome in outcomes {
        solves += 1;
        match outcome {
            Ok(Some(sol)) => {
                // Ascending grid plus strict improvement keeps the smallest
                // alpha among ties.
                if best.as_ref().map_or(true, |b| sol.eta > b.eta) {
                    best = Some(sol);
                }
            }
            Ok(None) => {}
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    let best = match best {
        Some(b) => b,
        None => {
            return Err(match first_err {
                Some(e) => e,
                None => AnError::Infeasible(format!(
                    "no admissible design meets tau_ms = {tau_ms}"
                )),
            })
        }
    };

    let polished = power_min_polish(best.alpha, best.eta, tau_prime, config, use_an)?;
    let triple = polished.unwrap_or_else(|| best.triple.clone());
    Ok(build_point(
        tau_ms,
        tau_prime,
        best.eta,
        triple,
        solves + 1,
        config,
    ))
}

/// Maximizes the secrecy rate under the QoMS floor `tau_ms`, reporting the
/// optimizing design and diagnostics.
///
/// The outer search spends at most `floor(T1)` inner solves plus one polish,
/// with `T1` from [`t1_bound`].
pub fn qoms_srm(tau_ms: f64, config: &SystemConfig) -> Result<RatePoint, AnError> {
    qoms_srm_impl(tau_ms, config, true)
}

pub(crate) fn sweep_impl(
    config: &SystemConfig,
    use_an: bool,
    scheme: Scheme,
) -> Result<RegionResult, AnError> {
    let (tau_max, q0_cap) = multicast_capacity(config)?;
    let mut points = Vec::new();
    let mut failures = Vec::new();
    let mut total = 1usize;

    let endpoint_triple = CovarianceTriple::from_solver(
        &q0_cap,
        &HermitianMatrix::zeros(config.channel_set.n_tx()),
        &HermitianMatrix::zeros(config.channel_set.n_tx()),
    );
    if tau_max < 1e-12 {
        points.push(build_point(0.0, 0.0, 1.0, endpoint_triple, 0, config));
        return Ok(RegionResult {
            scheme,
            points,
            failures,
            tau_max,
            total_solver_calls: total,
        });
    }

    let n_grid = config.grid_points;
    for i in 0..n_grid - 1 {
        let tau_ms = tau_max * i as f64 / (n_grid - 1) as f64;
        match qoms_srm_impl(tau_ms, config, use_an) {
            Ok(p) => {
                total += p.diagnostics.solver_calls;
                points.push(p);
            }
            Err(e) => failures.push(PointFailure {
                tau_ms,
                reason: e.to_string(),
            }),
        }
    }
    // The capacity endpoint admits no confidential power; emit it in closed
    // form instead of solving a knife-edge program.
    points.push(build_point(
        tau_max,
        tau_max.exp2() - 1.0,
        1.0,
        endpoint_triple,
        0,
        config,
    ));

    Ok(RegionResult {
        scheme,
        points,
        failures,
        tau_max,
        total_solver_calls: total,
    })
}

/// Sweeps the QoMS grid from 0 to the multicast capacity and returns the
/// region boundary for the artificial-noise-enabled optimal scheme.
pub fn region_sweep(config: &SystemConfig) -> Result<RegionResult, AnError> {
    sweep_impl(config, true, Scheme::Optimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ChannelSet;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_config() -> SystemConfig {
        let cs = ChannelSet::perfect(
            2,
            vec![vec![c(1.1, -0.4), c(0.3, 0.8)], vec![c(-0.5, 0.2), c(0.9, 0.1)]],
        )
        .unwrap();
        SystemConfig::new(cs, 10.0, 0.5, 1e-3, 5).unwrap()
    }

    #[test]
    fn equal_channels_reach_single_user_capacity() {
        let h = vec![c(0.8, 0.3), c(-0.2, 0.6)];
        let cs = ChannelSet::perfect(2, vec![h.clone(), h.clone()]).unwrap();
        let config = SystemConfig::new(cs, 4.0, 0.5, 1e-3, 3).unwrap();
        let gain: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        let (tau_max, q0) = multicast_capacity(&config).unwrap();
        assert_relative_eq!(tau_max, (1.0 + 4.0 * gain).log2(), max_relative = 1e-6);
        assert!(q0.trace() <= 4.0 * (1.0 + 1e-6));
    }

    #[test]
    fn capacity_no_higher_than_any_single_receiver() {
        let config = small_config();
        let (tau_max, _) = multicast_capacity(&config).unwrap();
        for k in 0..config.channel_set.k() {
            let cap_k = (1.0 + config.power * config.channel_set.norm_sq(k)).log2();
            assert!(tau_max <= cap_k + 1e-6);
        }
        assert!(tau_max > 0.1);
    }

    #[test]
    fn inner_solution_satisfies_normalization() {
        let config = small_config();
        let sol = inner_sdp(1.8, 0.4, &config).unwrap().unwrap();
        let h1 = config.channel_set.channel(0);
        let norm = sol.alpha * (sol.xi + sol.gamma.quad_form(h1));
        assert!((norm - 1.0).abs() < 1e-6, "normalization broke: {norm}");
        assert!(sol.triple.within_power(config.power));
        // eta must equal the fractional objective of the recovered design.
        let num = 1.0 + sol.triple.qc.quad_form(h1) + sol.triple.qa.quad_form(h1);
        let den = sol.alpha * (1.0 + sol.triple.qa.quad_form(h1));
        assert_relative_eq!(sol.eta, num / den, max_relative = 1e-5);
    }

    #[test]
    fn unreachable_qoms_level_is_infeasible() {
        let config = small_config();
        let (tau_max, _) = multicast_capacity(&config).unwrap();
        let too_high = (tau_max + 1.0).exp2() - 1.0;
        assert!(inner_sdp(1.5, too_high, &config).unwrap().is_none());
        assert!(quasiconvex_oracle(1.5, too_high, &config).unwrap().is_none());
    }

    #[test]
    fn rank_diagnostics_flags_outer_products() {
        let h = vec![c(0.7, -0.1), c(0.2, 0.5)];
        let triple = CovarianceTriple {
            q0: HermitianMatrix::outer(&h),
            qc: HermitianMatrix::scaled_identity(2, 1.0),
            qa: HermitianMatrix::zeros(2),
        };
        let (rc, r0, ra) = rank_diagnostics(&triple);
        assert!(r0 < 1e-12);
        assert_relative_eq!(rc, 1.0, max_relative = 1e-12);
        assert_eq!(ra, 0.0);
    }
}
