//! Reduced-complexity baseline schemes and cross-scheme evaluation.
//!
//! Five boundaries comparable with the optimal sweeps: power splitting
//! (dedicated budgets for the confidential and multicast services), a
//! single-solve-per-ratio lower bound for the worst-case region, sweeps with
//! artificial noise disabled, TDMA time sharing between the two services,
//! and the worst-case degradation of designs computed from nominal channels.

use crate::model::{exact_worst_case, CovarianceTriple, SystemConfig};
use crate::perfect_region::{self, rank_diagnostics};
use crate::robust_region::{self, RobustSettings};
use crate::{AnError, Diagnostics, PointFailure, RatePoint, RegionResult, Scheme};
use num_complex::Complex64;
use sdp::{HermitianMatrix, LinExpr, LmiExpr, SdpProblem, SolveSettings, VarId};

/// Lower floor on the scale variable of the fractional transformations.
const XI_FLOOR: f64 = 1e-9;

/// One boundary point of the power-splitting scheme.
#[derive(Debug, Clone)]
pub struct PowerSplitPoint {
    /// Fraction of the budget assigned to the confidential service.
    pub rho: f64,
    /// Secrecy rate achieved with the confidential share.
    pub rc: f64,
    /// Multicast rate achieved with the remaining share.
    pub r0: f64,
    pub triple: CovarianceTriple,
    pub solver_calls: usize,
}

fn scaled_config(config: &SystemConfig, power: f64) -> SystemConfig {
    SystemConfig::new(
        config.channel_set.clone(),
        power,
        config.search_epsilon,
        config.bisection_tol,
        config.grid_points,
    )
    .expect("scaling the power budget preserves validity")
}

/// Largest supported rate of the multicast service when the confidential
/// covariances are frozen: one SDP maximizing the common certified SINR.
fn multicast_under_interference(
    q_fixed: &HermitianMatrix,
    power: f64,
    config: &SystemConfig,
    robust: bool,
) -> Result<(f64, HermitianMatrix), AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let mut prob = SdpProblem::new();
    let q0 = prob.hermitian_var(n);
    let t = prob.scalar_var();
    for k in 0..cs.k() {
        let h = cs.channel(k);
        let eps = if robust { cs.radius(k) } else { 0.0 };
        if eps > 0.0 {
            // Bordered block of Q0 - t (Qc + Qa) with an uncertainty
            // multiplier; t scales only constant matrices, so it stays
            // affine.
            let l = crate::robust_region::border_l(h);
            let d = prob.scalar_var();
            let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::zeros(n + 1));
            lmi.push_congruence(q0, 1.0, Some(l.clone()));
            lmi.push_scalar(d, crate::robust_region::slack_coeff(n, eps));
            let mut t_coeff = q_fixed.congruence(&l);
            let mut corner = nalgebra::DMatrix::<Complex64>::zeros(n + 1, n + 1);
            corner[(n, n)] = Complex64::new(1.0, 0.0);
            t_coeff = t_coeff.add_scaled(1.0, &HermitianMatrix::new(corner));
            lmi.push_scalar(t, t_coeff.scaled(-1.0));
            prob.add_lmi(lmi);
        } else {
            let load = 1.0 + q_fixed.quad_form(h);
            prob.add_ineq_ge(LinExpr::zero().plus_quad(h, q0).plus_scalar(-load, t));
        }
    }
    prob.add_ineq_ge(
        LinExpr::constant(power).plus_trace(HermitianMatrix::scaled_identity(n, -1.0), q0),
    );
    prob.set_objective(LinExpr::zero().plus_scalar(1.0, t));
    let sol = sdp::solve(&prob, &SolveSettings::default());
    if !sol.is_optimal() {
        return Err(AnError::Solver(format!(
            "multicast subproblem ended with {:?}",
            sol.status
        )));
    }
    let t_star = sol.scalar_value(t).unwrap().max(0.0);
    Ok(((1.0 + t_star).log2(), sol.hermitian_value(q0).unwrap()))
}

/// Computes the power-splitting boundary points over `rho_grid`.
///
/// For each split `rho`, the confidential service gets budget `rho P` and is
/// solved as an unconstrained secrecy maximization; the multicast service
/// then maximizes its rate with the remaining budget against the frozen
/// confidential covariances.
pub fn power_split_points(
    config: &SystemConfig,
    robust: bool,
    rho_grid: &[f64],
) -> Result<Vec<PowerSplitPoint>, AnError> {
    let n = config.channel_set.n_tx();
    let mut points = Vec::with_capacity(rho_grid.len());
    for &rho in rho_grid {
        if !(0.0..=1.0).contains(&rho) {
            return Err(AnError::Validation(format!(
                "split fraction {rho} outside [0, 1]"
            )));
        }
        let mut calls = 0usize;
        // Confidential share.
        let (rc, qc, qa) = if rho <= 0.0 {
            (0.0, HermitianMatrix::zeros(n), HermitianMatrix::zeros(n))
        } else {
            let sub = scaled_config(config, rho * config.power);
            let point = if robust {
                let settings = RobustSettings::from_config(&sub);
                robust_region::robust_qoms_srm(0.0, &sub, &settings)?
            } else {
                perfect_region::qoms_srm(0.0, &sub)?
            };
            calls += point.diagnostics.solver_calls;
            (point.secrecy_rate, point.triple.qc, point.triple.qa)
        };
        // Multicast share against the frozen confidential covariances.
        let (r0, q0) = if rho >= 1.0 {
            (0.0, HermitianMatrix::zeros(n))
        } else {
            calls += 1;
            let interference = qc.add_scaled(1.0, &qa);
            multicast_under_interference(
                &interference,
                (1.0 - rho) * config.power,
                config,
                robust,
            )?
        };
        points.push(PowerSplitPoint {
            rho,
            rc,
            r0,
            triple: CovarianceTriple::from_solver(&q0, &qc, &qa),
            solver_calls: calls,
        });
    }
    Ok(points)
}

fn split_point_to_rate_point(p: &PowerSplitPoint, config: &SystemConfig, robust: bool) -> RatePoint {
    let (rc_rank, r0_rank, ra_rank) = rank_diagnostics(&p.triple);
    let achieved = if robust {
        exact_worst_case(&p.triple, &config.channel_set).multicast_rate
    } else {
        crate::model::rates(&p.triple, &config.channel_set).multicast_rate
    };
    RatePoint {
        tau_ms: p.r0,
        tau_prime: p.r0.exp2() - 1.0,
        secrecy_rate: p.rc,
        multicast_rate: achieved,
        triple: p.triple.clone(),
        diagnostics: Diagnostics {
            rank_ratio_qc: rc_rank,
            rank_ratio_q0: r0_rank,
            rank_ratio_qa: ra_rank,
            qoms_slack: achieved - p.r0,
            solver_calls: p.solver_calls,
        },
    }
}

/// Boundary of the power-splitting scheme over `rho_grid`, sorted by
/// multicast rate.
pub fn power_split_region(
    config: &SystemConfig,
    robust: bool,
    rho_grid: &[f64],
) -> Result<RegionResult, AnError> {
    let splits = power_split_points(config, robust, rho_grid)?;
    let total = splits.iter().map(|p| p.solver_calls).sum();
    let tau_max = splits.iter().map(|p| p.r0).fold(0.0, f64::max);
    let mut points: Vec<RatePoint> = splits
        .iter()
        .map(|p| split_point_to_rate_point(p, config, robust))
        .collect();
    points.sort_by(|a, b| a.tau_ms.total_cmp(&b.tau_ms));
    Ok(RegionResult {
        scheme: Scheme::PowerSplit,
        points,
        failures: Vec::new(),
        tau_max,
        total_solver_calls: total,
    })
}

/// Solution of the single-solve lower bound at one eavesdropper ratio.
#[derive(Debug, Clone)]
pub struct LowerBoundSolution {
    /// Scaled confidential covariance; `Qc = Z / xi`.
    pub z: HermitianMatrix,
    /// Scaled noise covariance; `Qa = Gamma / xi`.
    pub gamma: HermitianMatrix,
    /// Scaled multicast covariance; `Q0 = Phi / xi`.
    pub phi: HermitianMatrix,
    /// Inverse of the denominator slack.
    pub xi: f64,
    /// Bounded ratio objective; the secrecy rate bound is `log2(a)`.
    pub a: f64,
    /// Scaled eavesdropper-cap multipliers.
    pub lambda_slacks: Vec<f64>,
    /// Scaled QoMS-floor multipliers.
    pub mu_slacks: Vec<f64>,
    /// Multiplier of the numerator ball bound.
    pub nu_a: f64,
    /// Multiplier of the denominator ball bound.
    pub nu_b: f64,
    pub beta: f64,
}

impl LowerBoundSolution {
    /// Covariances recovered by undoing the scale transformation.
    pub fn triple(&self) -> CovarianceTriple {
        let inv = 1.0 / self.xi;
        CovarianceTriple::from_solver(
            &self.phi.scaled(inv),
            &self.z.scaled(inv),
            &self.gamma.scaled(inv),
        )
    }
}

/// One convex solve of the lower-bound scheme at a fixed eavesdropper ratio:
/// the worst-case numerator and denominator of the legitimate ratio are
/// bounded separately over the ball, losing tightness but removing the inner
/// bisection.
pub(crate) fn lower_bound_inner(
    beta: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<Option<LowerBoundSolution>, AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let h1 = cs.channel(0);
    let eps1 = cs.radius(0);

    let mut prob = SdpProblem::new();
    let z = prob.hermitian_var(n);
    let phi = prob.hermitian_var(n);
    let gamma = if use_an { Some(prob.hermitian_var(n)) } else { None };
    let xi = prob.scalar_var();
    let a = prob.free_var();

    // Numerator bound: xi + min over the ball of h1 (Z + Gamma) h1^H >= a.
    if eps1 > 0.0 {
        let nu_a = prob.scalar_var();
        let l = robust_region::border_l(h1);
        let mut corner = nalgebra::DMatrix::<Complex64>::zeros(n + 1, n + 1);
        corner[(n, n)] = Complex64::new(1.0, 0.0);
        let corner = HermitianMatrix::new(corner);
        let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::zeros(n + 1));
        lmi.push_congruence(z, 1.0, Some(l.clone()));
        if let Some(g) = gamma {
            lmi.push_congruence(g, 1.0, Some(l.clone()));
        }
        lmi.push_scalar(xi, corner.clone());
        lmi.push_scalar(a, corner.scaled(-1.0));
        lmi.push_scalar(nu_a, robust_region::slack_coeff(n, eps1));
        prob.add_lmi(lmi);

        // Denominator bound: beta (xi + max over the ball of
        // h1 Gamma h1^H) <= 1.
        if let Some(g) = gamma {
            let nu_b = prob.scalar_var();
            let mut corner_b = nalgebra::DMatrix::<Complex64>::zeros(n + 1, n + 1);
            corner_b[(n, n)] = Complex64::new(1.0, 0.0);
            let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::new(corner_b));
            lmi.push_congruence(g, -beta, Some(l));
            lmi.push_scalar(xi, corner.scaled(-beta));
            lmi.push_scalar(nu_b, robust_region::slack_coeff(n, eps1));
            prob.add_lmi(lmi);
        } else {
            prob.add_ineq_ge(LinExpr::constant(1.0).plus_scalar(-beta, xi));
        }
    } else {
        let mut num = LinExpr::zero()
            .plus_quad(h1, z)
            .plus_scalar(1.0, xi)
            .plus_scalar(-1.0, a);
        if let Some(g) = gamma {
            num = num.plus_quad(h1, g);
        }
        prob.add_ineq_ge(num);
        let mut den = LinExpr::constant(1.0).plus_scalar(-beta, xi);
        if let Some(g) = gamma {
            den = den.plus_trace(HermitianMatrix::outer(h1).scaled(-beta), g);
        }
        prob.add_ineq_ge(den);
    }

    // Scaled eavesdropper caps.
    let mut lambda_vars: Vec<Option<VarId>> = Vec::with_capacity(cs.k() - 1);
    for k in 1..cs.k() {
        let h = cs.channel(k);
        let eps = cs.radius(k);
        if eps > 0.0 {
            let lam = prob.scalar_var();
            lambda_vars.push(Some(lam));
            let l = robust_region::border_l(h);
            let mut corner = nalgebra::DMatrix::<Complex64>::zeros(n + 1, n + 1);
            corner[(n, n)] = Complex64::new(beta - 1.0, 0.0);
            let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::zeros(n + 1));
            lmi.push_congruence(z, -1.0, Some(l.clone()));
            if let Some(g) = gamma {
                lmi.push_congruence(g, beta - 1.0, Some(l));
            }
            lmi.push_scalar(xi, HermitianMatrix::new(corner));
            lmi.push_scalar(lam, robust_region::slack_coeff(n, eps));
            prob.add_lmi(lmi);
        } else {
            lambda_vars.push(None);
            let mut e = LinExpr::zero()
                .plus_trace(HermitianMatrix::outer(h).scaled(-1.0), z)
                .plus_scalar(beta - 1.0, xi);
            if let Some(g) = gamma {
                e = e.plus_trace(HermitianMatrix::outer(h).scaled(beta - 1.0), g);
            }
            prob.add_ineq_ge(e);
        }
    }

    // Scaled QoMS floors.
    let mut mu_vars: Vec<Option<VarId>> = Vec::with_capacity(cs.k());
    for k in 0..cs.k() {
        let h = cs.channel(k);
        let eps = cs.radius(k);
        if eps > 0.0 {
            let mu = prob.scalar_var();
            mu_vars.push(Some(mu));
            let l = robust_region::border_l(h);
            let mut corner = nalgebra::DMatrix::<Complex64>::zeros(n + 1, n + 1);
            corner[(n, n)] = Complex64::new(-tau_prime, 0.0);
            let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::zeros(n + 1));
            lmi.push_congruence(phi, 1.0, Some(l.clone()));
            lmi.push_congruence(z, -tau_prime, Some(l.clone()));
            if let Some(g) = gamma {
                lmi.push_congruence(g, -tau_prime, Some(l));
            }
            lmi.push_scalar(xi, HermitianMatrix::new(corner));
            lmi.push_scalar(mu, robust_region::slack_coeff(n, eps));
            prob.add_lmi(lmi);
        } else {
            mu_vars.push(None);
            let mut e = LinExpr::zero()
                .plus_quad(h, phi)
                .plus_trace(HermitianMatrix::outer(h).scaled(-tau_prime), z)
                .plus_scalar(-tau_prime, xi);
            if let Some(g) = gamma {
                e = e.plus_trace(HermitianMatrix::outer(h).scaled(-tau_prime), g);
            }
            prob.add_ineq_ge(e);
        }
    }

    // Scaled power budget and scale floor.
    let neg_id = HermitianMatrix::scaled_identity(n, -1.0);
    let mut pw = LinExpr::zero()
        .plus_trace(neg_id.clone(), phi)
        .plus_trace(neg_id.clone(), z)
        .plus_scalar(config.power, xi);
    if let Some(g) = gamma {
        pw = pw.plus_trace(neg_id, g);
    }
    prob.add_ineq_ge(pw);
    prob.add_ineq_ge(LinExpr::constant(-XI_FLOOR).plus_scalar(1.0, xi));

    prob.set_objective(LinExpr::zero().plus_scalar(1.0, a));
    let sol = sdp::solve(&prob, &SolveSettings::default());
    match sol.status {
        sdp::SolveStatus::Optimal => {}
        sdp::SolveStatus::Infeasible => return Ok(None),
        other => {
            return Err(AnError::Solver(format!(
                "lower-bound solve at beta {beta} ended with {other:?}"
            )))
        }
    }
    let xi_val = sol.scalar_value(xi).unwrap().max(XI_FLOOR);
    Ok(Some(LowerBoundSolution {
        z: sol.hermitian_value(z).unwrap(),
        gamma: gamma
            .map(|g| sol.hermitian_value(g).unwrap())
            .unwrap_or_else(|| HermitianMatrix::zeros(n)),
        phi: sol.hermitian_value(phi).unwrap(),
        xi: xi_val,
        a: sol.scalar_value(a).unwrap(),
        lambda_slacks: lambda_vars
            .iter()
            .map(|v| v.map(|x| sol.scalar_value(x).unwrap().max(0.0)).unwrap_or(0.0))
            .collect(),
        mu_slacks: mu_vars
            .iter()
            .map(|v| v.map(|x| sol.scalar_value(x).unwrap().max(0.0)).unwrap_or(0.0))
            .collect(),
        nu_a: 0.0,
        nu_b: 0.0,
        beta,
    }))
}

pub(crate) fn lower_bound_point(
    tau_ms: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
) -> Result<RatePoint, AnError> {
    let tau_prime = tau_ms.exp2() - 1.0;
    let delta = settings.eps.exp2() - 1.0;
    let span = robust_region::beta_max(config) - 1.0;
    let count = (span / delta).floor() as usize;
    let mut best: Option<LowerBoundSolution> = None;
    let mut calls = 0usize;
    for j in 0..=count {
        let beta = 1.0 + delta * j as f64;
        calls += 1;
        if let Some(sol) = lower_bound_inner(beta, tau_prime, config, use_an)? {
            if best.as_ref().map_or(true, |b| sol.a > b.a) {
                best = Some(sol);
            }
        }
    }
    match best {
        Some(sol) => {
            let triple = sol.triple();
            let (rc, r0, ra) = rank_diagnostics(&triple);
            let wc = exact_worst_case(&triple, &config.channel_set);
            Ok(RatePoint {
                tau_ms,
                tau_prime,
                secrecy_rate: sol.a.log2().max(0.0),
                multicast_rate: wc.multicast_rate,
                triple,
                diagnostics: Diagnostics {
                    rank_ratio_qc: rc,
                    rank_ratio_q0: r0,
                    rank_ratio_qa: ra,
                    qoms_slack: wc.multicast_rate - tau_ms,
                    solver_calls: calls,
                },
            })
        }
        None => Err(AnError::Infeasible(format!(
            "worst-case multicast rate {tau_ms} unreachable by the lower-bound scheme"
        ))),
    }
}

/// Boundary of the single-solve-per-ratio lower bound on the worst-case
/// region.
pub fn lower_bound_region(
    config: &SystemConfig,
    settings: &RobustSettings,
) -> Result<RegionResult, AnError> {
    lower_bound_region_impl(config, settings, true)
}

pub(crate) fn lower_bound_region_impl(
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
) -> Result<RegionResult, AnError> {
    let (tau_max, q0_cap) = robust_region::wc_multicast_capacity(config)?;
    let n = config.channel_set.n_tx();
    let endpoint = CovarianceTriple::from_solver(
        &q0_cap,
        &HermitianMatrix::zeros(n),
        &HermitianMatrix::zeros(n),
    );
    let endpoint_point = |tau: f64| {
        let wc = exact_worst_case(&endpoint, &config.channel_set);
        RatePoint {
            tau_ms: tau,
            tau_prime: tau.exp2() - 1.0,
            secrecy_rate: 0.0,
            multicast_rate: wc.multicast_rate,
            triple: endpoint.clone(),
            diagnostics: Diagnostics {
                rank_ratio_qc: 0.0,
                rank_ratio_q0: rank_diagnostics(&endpoint).1,
                rank_ratio_qa: 0.0,
                qoms_slack: wc.multicast_rate - tau,
                solver_calls: 0,
            },
        }
    };

    let mut points = Vec::new();
    let mut failures = Vec::new();
    let mut total = 1usize;
    if tau_max < 1e-12 {
        points.push(endpoint_point(0.0));
        return Ok(RegionResult {
            scheme: Scheme::LowerBound,
            points,
            failures,
            tau_max,
            total_solver_calls: total,
        });
    }
    let n_grid = config.grid_points;
    for i in 0..n_grid - 1 {
        let tau_ms = tau_max * i as f64 / (n_grid - 1) as f64;
        match lower_bound_point(tau_ms, config, settings, use_an) {
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
    points.push(endpoint_point(tau_max));
    Ok(RegionResult {
        scheme: Scheme::LowerBound,
        points,
        failures,
        tau_max,
        total_solver_calls: total,
    })
}

/// Region sweep with the artificial-noise covariance removed from every
/// problem.
pub fn no_an_region(config: &SystemConfig, robust: bool) -> Result<RegionResult, AnError> {
    if robust {
        let settings = RobustSettings::from_config(config);
        robust_region::robust_sweep_impl(config, &settings, false, Scheme::NoArtificialNoise)
    } else {
        perfect_region::sweep_impl(config, false, Scheme::NoArtificialNoise)
    }
}

/// Single boundary point of the noise-free scheme at one floor, avoiding a
/// full sweep.
pub fn no_an_point(tau_ms: f64, config: &SystemConfig, robust: bool) -> Result<RatePoint, AnError> {
    if robust {
        let settings = RobustSettings::from_config(config);
        robust_region::robust_qoms_srm_impl(tau_ms, config, &settings, false)
    } else {
        perfect_region::qoms_srm_impl(tau_ms, config, false)
    }
}

/// Time-sharing baseline: the segment between half the multicast-only and
/// half the secrecy-only corner points, sampled on the sweep grid.
///
/// Time sharing has no single transmit design, so the returned points carry
/// zero covariances.
pub fn tdma_region(config: &SystemConfig, robust: bool) -> Result<RegionResult, AnError> {
    let n = config.channel_set.n_tx();
    let (tau_max, secrecy_corner, corner_calls) = if robust {
        let settings = RobustSettings::from_config(config);
        let (cap, _) = robust_region::wc_multicast_capacity(config)?;
        let srm = robust_region::robust_qoms_srm(0.0, config, &settings)?;
        (cap, srm.secrecy_rate, srm.diagnostics.solver_calls + 1)
    } else {
        let (cap, _) = perfect_region::multicast_capacity(config)?;
        let srm = perfect_region::qoms_srm(0.0, config)?;
        (cap, srm.secrecy_rate, srm.diagnostics.solver_calls + 1)
    };

    let make_point = |tau: f64, secrecy: f64| RatePoint {
        tau_ms: tau,
        tau_prime: tau.exp2() - 1.0,
        secrecy_rate: secrecy,
        multicast_rate: tau,
        triple: CovarianceTriple::zero(n),
        diagnostics: Diagnostics {
            rank_ratio_qc: 0.0,
            rank_ratio_q0: 0.0,
            rank_ratio_qa: 0.0,
            qoms_slack: 0.0,
            solver_calls: 0,
        },
    };

    let mut points = Vec::new();
    if tau_max < 1e-12 {
        points.push(make_point(0.0, secrecy_corner / 2.0));
    } else {
        let n_grid = config.grid_points;
        for i in 0..n_grid {
            let frac = i as f64 / (n_grid - 1) as f64;
            points.push(make_point(
                0.5 * tau_max * frac,
                0.5 * secrecy_corner * (1.0 - frac),
            ));
        }
    }
    Ok(RegionResult {
        scheme: Scheme::Tdma,
        points,
        failures: Vec::new(),
        tau_max: 0.5 * tau_max,
        total_solver_calls: corner_calls,
    })
}

/// Designs from the nominal channels, re-evaluated at their exact worst case
/// over the uncertainty balls.
///
/// Points keep the nominal floor as their grid coordinate; `multicast_rate`
/// and `secrecy_rate` hold the degraded worst-case values, so `qoms_slack`
/// goes negative where the nominal design breaks its floor.
pub fn nonrobust_eval(config: &SystemConfig) -> Result<RegionResult, AnError> {
    let nominal = perfect_region::region_sweep(config)?;
    let points = nominal
        .points
        .into_iter()
        .map(|p| {
            let wc = exact_worst_case(&p.triple, &config.channel_set);
            RatePoint {
                secrecy_rate: wc.secrecy_rate,
                multicast_rate: wc.multicast_rate,
                diagnostics: Diagnostics {
                    qoms_slack: wc.multicast_rate - p.tau_ms,
                    ..p.diagnostics
                },
                ..p
            }
        })
        .collect();
    Ok(RegionResult {
        scheme: Scheme::NonRobust,
        points,
        failures: nominal.failures,
        tau_max: nominal.tau_max,
        total_solver_calls: nominal.total_solver_calls,
    })
}
