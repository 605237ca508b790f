//! Worst-case secrecy-rate region boundary under spherical channel
//! uncertainty.
//!
//! Every rate guarantee must hold for all channels within per-receiver
//! uncertainty balls. The S-procedure converts each ball-quantified quadratic
//! constraint into one linear matrix inequality with a nonnegative
//! multiplier, giving three block families: eavesdropper caps `T_k` at a
//! ratio bound `beta`, QoMS floors `S_k`, and the legitimate-ratio
//! certificate `U` at a bisection level. The inner problem for fixed `beta`
//! is quasiconcave in the level and solved by bisection over LMI feasibility;
//! an outer uniform grid over `beta` finishes the search with an accuracy
//! guarantee in bits.
//!
//! Receivers whose radius is zero get the Schur-collapsed scalar form of
//! their block instead of the rank-deficient bordered LMI, which is exactly
//! equivalent and numerically better behaved.

use crate::model::{exact_worst_case, ChannelSet, CovarianceTriple, SystemConfig};
use crate::perfect_region::rank_diagnostics;
use crate::{AnError, Diagnostics, PointFailure, RatePoint, RegionResult, Scheme};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use sdp::{HermitianMatrix, LinExpr, LmiExpr, SdpProblem, SolveSettings, VarId};

/// Margin threshold: a maximal-margin solve at or above this value counts as
/// feasible.
const FEAS_MARGIN: f64 = -1e-9;

/// Relative slack applied to a level before the final power-minimizing
/// re-solve, keeping it strictly feasible.
const LEVEL_RELIEF: f64 = 1e-7;

fn settings_sdp() -> SolveSettings {
    SolveSettings::default()
}

/// Search controls of the robust sweeps.
#[derive(Debug, Clone, Copy)]
pub struct RobustSettings {
    /// Outer suboptimality target in bits.
    pub eps: f64,
    /// Bisection tolerance on the inner level.
    pub eps_b: f64,
}

impl RobustSettings {
    /// Validates `eps > 0` and `0 < eps_b < 1 - 2^(-eps)`.
    pub fn new(eps: f64, eps_b: f64) -> Result<Self, AnError> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(AnError::Validation(format!("eps must be positive: {eps}")));
        }
        let cap = 1.0 - (-eps).exp2();
        if !eps_b.is_finite() || eps_b <= 0.0 || eps_b >= cap {
            return Err(AnError::Validation(format!(
                "eps_b must lie in (0, {cap}), got {eps_b}"
            )));
        }
        Ok(Self { eps, eps_b })
    }

    /// Takes `eps` and `eps_b` from a validated [`SystemConfig`].
    pub fn from_config(config: &SystemConfig) -> Self {
        Self {
            eps: config.search_epsilon,
            eps_b: config.bisection_tol,
        }
    }
}

/// Solution of the robust inner problem at one `beta`.
#[derive(Debug, Clone)]
pub struct RobustInnerSolution {
    pub q0: HermitianMatrix,
    pub qc: HermitianMatrix,
    pub qa: HermitianMatrix,
    /// S-procedure multipliers of the eavesdropper caps (zero-radius
    /// receivers carry 0).
    pub t_slacks: Vec<f64>,
    /// S-procedure multipliers of the QoMS floors.
    pub delta_slacks: Vec<f64>,
    /// S-procedure multiplier of the legitimate-ratio certificate.
    pub rho: f64,
    pub beta: f64,
    /// Certified worst-case ratio objective; the secrecy rate is
    /// `log2(eta)`.
    pub eta: f64,
    /// Bisection level at which the stored design was certified (equals
    /// `eta` at termination).
    pub level: f64,
}

impl RobustInnerSolution {
    /// Covariances as a validated (clipped) triple.
    pub fn triple(&self) -> CovarianceTriple {
        CovarianceTriple::from_solver(&self.q0, &self.qc, &self.qa)
    }
}

/// Numeric values of the S-procedure blocks at a candidate design.
///
/// Receivers with a zero radius degenerate to their 1x1 Schur-collapsed
/// scalar residual.
#[derive(Debug, Clone)]
pub struct LmiBlocks {
    /// `T_k` per unauthorized receiver (index 0 is receiver 2).
    pub eaves_caps: Vec<HermitianMatrix>,
    /// `S_k` per receiver.
    pub qoms_floors: Vec<HermitianMatrix>,
    /// `U` at the stored level.
    pub legit_level: HermitianMatrix,
}

impl LmiBlocks {
    /// Smallest eigenvalue across all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eaves_caps
            .iter()
            .chain(self.qoms_floors.iter())
            .chain(std::iter::once(&self.legit_level))
            .map(|b| b.min_eigenvalue())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Bordered block `[[s I + M, M h^H], [h M, h M h^H + corner]]`.
fn bordered(m: &HermitianMatrix, h: &[Complex64], top_scalar: f64, corner: f64) -> HermitianMatrix {
    let n = h.len();
    let mut data = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            data[(i, j)] = m.get(i, j);
        }
        data[(i, i)] += Complex64::new(top_scalar, 0.0);
        let mut border = Complex64::new(0.0, 0.0);
        for j in 0..n {
            border += m.get(i, j) * h[j].conj();
        }
        data[(i, n)] = border;
        data[(n, i)] = border.conj();
    }
    data[(n, n)] = Complex64::new(m.quad_form(h) + corner, 0.0);
    HermitianMatrix::new(data)
}

fn scalar_block(value: f64) -> HermitianMatrix {
    HermitianMatrix::new(DMatrix::from_element(1, 1, Complex64::new(value, 0.0)))
}

/// Evaluates the three S-procedure block families at explicit variable
/// values: eavesdropper caps at ratio bound `beta`, QoMS floors at SINR
/// target `tau_prime`, and the legitimate-ratio certificate at `level`.
#[allow(clippy::too_many_arguments)]
pub fn build_lmis(
    beta: f64,
    level: f64,
    tau_prime: f64,
    triple: &CovarianceTriple,
    t_slacks: &[f64],
    delta_slacks: &[f64],
    rho: f64,
    channels: &ChannelSet,
) -> LmiBlocks {
    let mut eaves_caps = Vec::with_capacity(channels.k() - 1);
    for k in 1..channels.k() {
        let h = channels.channel(k);
        let eps = channels.radius(k);
        let m = triple.qa.scaled(beta - 1.0).add_scaled(-1.0, &triple.qc);
        let block = if eps > 0.0 {
            let t = t_slacks[k - 1];
            bordered(&m, h, t, -t * eps * eps + beta - 1.0)
        } else {
            scalar_block(m.quad_form(h) + beta - 1.0)
        };
        eaves_caps.push(block);
    }

    let mut qoms_floors = Vec::with_capacity(channels.k());
    for k in 0..channels.k() {
        let h = channels.channel(k);
        let eps = channels.radius(k);
        let m = triple
            .q0
            .add_scaled(-tau_prime, &triple.qa)
            .add_scaled(-tau_prime, &triple.qc);
        let block = if eps > 0.0 {
            let d = delta_slacks[k];
            bordered(&m, h, d, -d * eps * eps - tau_prime)
        } else {
            scalar_block(m.quad_form(h) - tau_prime)
        };
        qoms_floors.push(block);
    }

    let h1 = channels.channel(0);
    let eps1 = channels.radius(0);
    let m_u = triple.qc.add_scaled(1.0 - level * beta, &triple.qa);
    let legit_level = if eps1 > 0.0 {
        bordered(&m_u, h1, rho, -rho * eps1 * eps1 - level * beta + 1.0)
    } else {
        scalar_block(m_u.quad_form(h1) - level * beta + 1.0)
    };

    LmiBlocks {
        eaves_caps,
        qoms_floors,
        legit_level,
    }
}

impl RobustInnerSolution {
    /// Blocks of this solution at QoMS target `tau_prime`.
    pub fn lmi_blocks(&self, tau_prime: f64, channels: &ChannelSet) -> LmiBlocks {
        build_lmis(
            self.beta,
            self.level,
            tau_prime,
            &CovarianceTriple {
                q0: self.q0.clone(),
                qc: self.qc.clone(),
                qa: self.qa.clone(),
            },
            &self.t_slacks,
            &self.delta_slacks,
            self.rho,
            channels,
        )
    }
}

/// Upper bound on the eavesdropper ratio variable:
/// `1 + P (||h1|| - eps_1)^2`.
pub fn beta_max(config: &SystemConfig) -> f64 {
    let cs = &config.channel_set;
    let gain = (cs.norm_sq(0).sqrt() - cs.radius(0)).powi(2);
    1.0 + config.power * gain
}

/// Border congruence matrix `[[I], [h]]` mapping an n-dim Hermitian into the
/// bordered (n+1)-dim block.
pub(crate) fn border_l(h: &[Complex64]) -> DMatrix<Complex64> {
    let n = h.len();
    DMatrix::from_fn(n + 1, n, |i, j| {
        if i < n {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            h[j]
        }
    })
}

/// Diagonal coefficient `diag(I, -eps^2)` of an S-procedure multiplier.
pub(crate) fn slack_coeff(n: usize, eps: f64) -> HermitianMatrix {
    let mut data = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    for i in 0..n {
        data[(i, i)] = Complex64::new(1.0, 0.0);
    }
    data[(n, n)] = Complex64::new(-eps * eps, 0.0);
    HermitianMatrix::new(data)
}

/// Constant matrix with a single bottom-corner entry.
fn corner_const(n: usize, corner: f64) -> HermitianMatrix {
    let mut data = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    data[(n, n)] = Complex64::new(corner, 0.0);
    HermitianMatrix::new(data)
}

struct RobustVars {
    q0: VarId,
    qc: VarId,
    qa: Option<VarId>,
    t_slacks: Vec<Option<VarId>>,
    delta_slacks: Vec<Option<VarId>>,
    rho: Option<VarId>,
}

/// Emits the robust constraint system at fixed (`beta`, `level`,
/// `tau_prime`) into `prob`, optionally shifted by a margin variable to the
/// inside of every block.
fn emit_robust_system(
    prob: &mut SdpProblem,
    beta: f64,
    level: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
    margin: Option<VarId>,
) -> RobustVars {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let q0 = prob.hermitian_var(n);
    let qc = prob.hermitian_var(n);
    let qa = if use_an { Some(prob.hermitian_var(n)) } else { None };

    let margin_lmi = |lmi: &mut LmiExpr, dim: usize| {
        if let Some(m) = margin {
            lmi.push_scalar(m, HermitianMatrix::scaled_identity(dim, -1.0));
        }
    };
    let margin_scalar = |expr: LinExpr| -> LinExpr {
        if let Some(m) = margin {
            expr.plus_scalar(-1.0, m)
        } else {
            expr
        }
    };

    // Eavesdropper caps at ratio bound beta.
    let mut t_slacks = Vec::with_capacity(cs.k() - 1);
    for k in 1..cs.k() {
        let h = cs.channel(k);
        let eps = cs.radius(k);
        if eps > 0.0 {
            let t = prob.scalar_var();
            t_slacks.push(Some(t));
            let l = border_l(h);
            let mut lmi = LmiExpr::new(n + 1, corner_const(n, beta - 1.0));
            if let Some(a) = qa {
                lmi.push_congruence(a, beta - 1.0, Some(l.clone()));
            }
            lmi.push_congruence(qc, -1.0, Some(l));
            lmi.push_scalar(t, slack_coeff(n, eps));
            margin_lmi(&mut lmi, n + 1);
            prob.add_lmi(lmi);
        } else {
            t_slacks.push(None);
            let mut e = LinExpr::constant(beta - 1.0)
                .plus_trace(HermitianMatrix::outer(h).scaled(-1.0), qc);
            if let Some(a) = qa {
                e = e.plus_trace(HermitianMatrix::outer(h).scaled(beta - 1.0), a);
            }
            prob.add_ineq_ge(margin_scalar(e));
        }
    }

    // QoMS floors at SINR target tau_prime.
    let mut delta_slacks = Vec::with_capacity(cs.k());
    for k in 0..cs.k() {
        let h = cs.channel(k);
        let eps = cs.radius(k);
        if eps > 0.0 {
            let d = prob.scalar_var();
            delta_slacks.push(Some(d));
            let l = border_l(h);
            let mut lmi = LmiExpr::new(n + 1, corner_const(n, -tau_prime));
            lmi.push_congruence(q0, 1.0, Some(l.clone()));
            lmi.push_congruence(qc, -tau_prime, Some(l.clone()));
            if let Some(a) = qa {
                lmi.push_congruence(a, -tau_prime, Some(l));
            }
            lmi.push_scalar(d, slack_coeff(n, eps));
            margin_lmi(&mut lmi, n + 1);
            prob.add_lmi(lmi);
        } else {
            delta_slacks.push(None);
            let mut e = LinExpr::constant(-tau_prime)
                .plus_quad(h, q0)
                .plus_trace(HermitianMatrix::outer(h).scaled(-tau_prime), qc);
            if let Some(a) = qa {
                e = e.plus_trace(HermitianMatrix::outer(h).scaled(-tau_prime), a);
            }
            prob.add_ineq_ge(margin_scalar(e));
        }
    }

    // Legitimate-ratio certificate at the composite level `level * beta`.
    let h1 = cs.channel(0);
    let eps1 = cs.radius(0);
    let lb = level * beta;
    let rho = if eps1 > 0.0 {
        let r = prob.scalar_var();
        let l = border_l(h1);
        let mut lmi = LmiExpr::new(n + 1, corner_const(n, 1.0 - lb));
        lmi.push_congruence(qc, 1.0, Some(l.clone()));
        if let Some(a) = qa {
            lmi.push_congruence(a, 1.0 - lb, Some(l));
        }
        lmi.push_scalar(r, slack_coeff(n, eps1));
        margin_lmi(&mut lmi, n + 1);
        prob.add_lmi(lmi);
        Some(r)
    } else {
        let mut e = LinExpr::constant(1.0 - lb).plus_quad(h1, qc);
        if let Some(a) = qa {
            e = e.plus_trace(HermitianMatrix::outer(h1).scaled(1.0 - lb), a);
        }
        prob.add_ineq_ge(margin_scalar(e));
        None
    };

    // Power budget, kept hard even in margin mode.
    let neg_id = HermitianMatrix::scaled_identity(n, -1.0);
    let mut pw = LinExpr::constant(config.power)
        .plus_trace(neg_id.clone(), q0)
        .plus_trace(neg_id.clone(), qc);
    if let Some(a) = qa {
        pw = pw.plus_trace(neg_id, a);
    }
    prob.add_ineq_ge(pw);

    RobustVars {
        q0,
        qc,
        qa,
        t_slacks,
        delta_slacks,
        rho,
    }
}

fn recover_solution(
    sol: &sdp::SdpSolution,
    vars: &RobustVars,
    beta: f64,
    level: f64,
    n: usize,
) -> RobustInnerSolution {
    RobustInnerSolution {
        q0: sol.hermitian_value(vars.q0).unwrap(),
        qc: sol.hermitian_value(vars.qc).unwrap(),
        qa: vars
            .qa
            .map(|a| sol.hermitian_value(a).unwrap())
            .unwrap_or_else(|| HermitianMatrix::zeros(n)),
        t_slacks: vars
            .t_slacks
            .iter()
            .map(|t| t.map(|v| sol.scalar_value(v).unwrap().max(0.0)).unwrap_or(0.0))
            .collect(),
        delta_slacks: vars
            .delta_slacks
            .iter()
            .map(|d| d.map(|v| sol.scalar_value(v).unwrap().max(0.0)).unwrap_or(0.0))
            .collect(),
        rho: vars
            .rho
            .map(|r| sol.scalar_value(r).unwrap().max(0.0))
            .unwrap_or(0.0),
        beta,
        eta: level,
        level,
    }
}

/// Maximal-margin feasibility probe of the level-`level` system. Returns the
/// recovered design when the margin clears [`FEAS_MARGIN`].
fn margin_probe(
    beta: f64,
    level: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<Option<RobustInnerSolution>, AnError> {
    let mut prob = SdpProblem::new();
    let m = prob.free_var();
    let vars = emit_robust_system(&mut prob, beta, level, tau_prime, config, use_an, Some(m));
    prob.set_objective(LinExpr::zero().plus_scalar(1.0, m));
    let sol = sdp::solve(&prob, &settings_sdp());
    if !sol.is_optimal() {
        // The margin system is strictly feasible by construction, so a
        // non-optimal status only appears under extreme coefficient scales
        // where the level is unachievable anyway.
        return Ok(None);
    }
    if sol.objective.unwrap() >= FEAS_MARGIN {
        Ok(Some(recover_solution(
            &sol,
            &vars,
            beta,
            level,
            config.channel_set.n_tx(),
        )))
    } else {
        Ok(None)
    }
}

/// Power-minimizing re-solve at a certified level, polishing the design.
fn robust_power_polish(
    beta: f64,
    level: f64,
    relief: f64,
    tau_prime: f64,
    config: &SystemConfig,
    use_an: bool,
) -> Result<Option<CovarianceTriple>, AnError> {
    let n = config.channel_set.n_tx();
    let mut prob = SdpProblem::new();
    let vars = emit_robust_system(
        &mut prob,
        beta,
        level * (1.0 - relief),
        tau_prime,
        config,
        use_an,
        None,
    );
    let neg_id = HermitianMatrix::scaled_identity(n, -1.0);
    let mut obj = LinExpr::zero()
        .plus_trace(neg_id.clone(), vars.q0)
        .plus_trace(neg_id.clone(), vars.qc);
    if let Some(a) = vars.qa {
        obj = obj.plus_trace(neg_id, a);
    }
    prob.set_objective(obj);
    let sol = sdp::solve(&prob, &settings_sdp());
    if !sol.is_optimal() {
        return Ok(None);
    }
    let q0 = sol.hermitian_value(vars.q0).unwrap();
    let qc = sol.hermitian_value(vars.qc).unwrap();
    let qa = vars
        .qa
        .map(|a| sol.hermitian_value(a).unwrap())
        .unwrap_or_else(|| HermitianMatrix::zeros(n));
    Ok(Some(CovarianceTriple::from_solver(&q0, &qc, &qa)))
}

pub(crate) enum InnerOutcome {
    Solved(Box<RobustInnerSolution>),
    /// Abandoned early because its level upper bound fell at or below the
    /// prune level.
    Pruned,
    Infeasible,
}

pub(crate) struct InnerRun {
    pub outcome: InnerOutcome,
    pub solves: usize,
    /// Bisection steps taken, excluding the endpoint decision probe; read by
    /// the depth-bound tests.
    #[allow(dead_code)]
    pub iterations: usize,
}

/// Bisection on the inner level over `[1/beta, beta_max/beta]`.
///
/// With a prune level `p`, the search only resolves levels above `p`: it
/// gives up immediately once the certified upper bound falls to `p`, and it
/// opens with a single probe at `p` so that a ratio bound whose value cannot
/// beat the incumbent costs one solve instead of a full bisection.
pub(crate) fn robust_inner_impl(
    beta: f64,
    tau_prime: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
    prune_level: Option<f64>,
) -> Result<InnerRun, AnError> {
    let mut lo = 1.0 / beta;
    let mut hi = beta_max(config) / beta;
    let mut best: Option<RobustInnerSolution> = None;
    let mut solves = 0usize;
    let mut iterations = 0usize;

    if let Some(p) = prune_level {
        if hi <= p {
            return Ok(InnerRun {
                outcome: InnerOutcome::Pruned,
                solves,
                iterations,
            });
        }
        if p > lo {
            solves += 1;
            match margin_probe(beta, p, tau_prime, config, use_an)? {
                Some(sol) => {
                    lo = p;
                    best = Some(sol);
                }
                None => {
                    return Ok(InnerRun {
                        outcome: InnerOutcome::Pruned,
                        solves,
                        iterations,
                    })
                }
            }
        }
    }

    while hi - lo > settings.eps_b {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        solves += 1;
        match margin_probe(beta, mid, tau_prime, config, use_an)? {
            Some(sol) => {
                lo = mid;
                best = Some(sol);
            }
            None => hi = mid,
        }
    }

    if best.is_none() {
        // No midpoint was feasible; decide at the structural lower endpoint.
        solves += 1;
        best = margin_probe(beta, lo, tau_prime, config, use_an)?;
    }
    Ok(InnerRun {
        outcome: match best {
            Some(mut sol) => {
                sol.eta = lo;
                sol.level = lo;
                InnerOutcome::Solved(Box::new(sol))
            }
            None => InnerOutcome::Infeasible,
        },
        solves,
        iterations,
    })
}

/// Solves the robust inner problem at a fixed `beta`: the best certified
/// worst-case ratio objective under the eavesdropper caps and QoMS floors.
///
/// Returns `Ok(None)` when the floors are infeasible at this `beta`.
pub fn robust_inner(
    beta: f64,
    tau_prime: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
) -> Result<Option<RobustInnerSolution>, AnError> {
    if !(1.0..=beta_max(config) * (1.0 + 1e-12)).contains(&beta) {
        return Err(AnError::Validation(format!(
            "beta {beta} outside [1, {}]",
            beta_max(config)
        )));
    }
    if !(tau_prime >= 0.0) || !tau_prime.is_finite() {
        return Err(AnError::Validation(format!(
            "tau_prime must be >= 0, got {tau_prime}"
        )));
    }
    let run = robust_inner_impl(beta, tau_prime, config, settings, true, None)?;
    Ok(match run.outcome {
        InnerOutcome::Solved(sol) => Some(*sol),
        _ => None,
    })
}

/// Largest worst-case multicast rate any design can guarantee, with an
/// achieving covariance.
pub fn wc_multicast_capacity(config: &SystemConfig) -> Result<(f64, HermitianMatrix), AnError> {
    let cs = &config.channel_set;
    let n = cs.n_tx();
    let mut prob = SdpProblem::new();
    let q0 = prob.hermitian_var(n);
    let t = prob.scalar_var();
    for k in 0..cs.k() {
        let h = cs.channel(k);
        let eps = cs.radius(k);
        if eps > 0.0 {
            let d = prob.scalar_var();
            let l = border_l(h);
            let mut lmi = LmiExpr::new(n + 1, HermitianMatrix::zeros(n + 1));
            lmi.push_congruence(q0, 1.0, Some(l));
            lmi.push_scalar(d, slack_coeff(n, eps));
            let mut corner_t = DMatrix::<Complex64>::zeros(n + 1, n + 1);
            corner_t[(n, n)] = Complex64::new(-1.0, 0.0);
            lmi.push_scalar(t, HermitianMatrix::new(corner_t));
            prob.add_lmi(lmi);
        } else {
            prob.add_ineq_ge(LinExpr::zero().plus_quad(h, q0).plus_scalar(-1.0, t));
        }
    }
    prob.add_ineq_ge(
        LinExpr::constant(config.power)
            .plus_trace(HermitianMatrix::scaled_identity(n, -1.0), q0),
    );
    prob.set_objective(LinExpr::zero().plus_scalar(1.0, t));
    let sol = sdp::solve(&prob, &settings_sdp());
    if !sol.is_optimal() {
        return Err(AnError::Solver(format!(
            "worst-case multicast capacity ended with {:?}",
            sol.status
        )));
    }
    let t_star = sol.scalar_value(t).unwrap().max(0.0);
    Ok(((1.0 + t_star).log2(), sol.hermitian_value(q0).unwrap()))
}

/// Outer grid spacing: `Delta = (2^eps (1 - eps_b) - 1) / (1 + 2^eps eps_b)`.
pub fn beta_step(settings: &RobustSettings) -> f64 {
    let e2 = settings.eps.exp2();
    (e2 * (1.0 - settings.eps_b) - 1.0) / (1.0 + e2 * settings.eps_b)
}

pub(crate) fn beta_grid(config: &SystemConfig, settings: &RobustSettings) -> Vec<f64> {
    let delta = beta_step(settings);
    let span = beta_max(config) - 1.0;
    let count = (span / delta).floor() as usize;
    (0..=count).map(|j| 1.0 + delta * j as f64).collect()
}

/// Solve-count bound of the robust outer search: the summed per-`beta`
/// bisection depths over the uniform grid.
pub fn t1_wc_bound(config: &SystemConfig, settings: &RobustSettings) -> f64 {
    let delta = beta_step(settings);
    let span = beta_max(config) - 1.0;
    let m_u = (span / delta).floor() as usize;
    (1..=m_u)
        .map(|i| (span / ((1.0 + delta * i as f64) * settings.eps_b)).log2().max(0.0))
        .sum()
}

/// Stride of the first-pass `beta` scan that seeds the prune level.
fn coarse_stride(len: usize) -> usize {
    (len / 48).max(1)
}

pub(crate) struct RobustSearch {
    pub best: Option<RobustInnerSolution>,
    pub solves: usize,
}

/// Two-phase scan of the `beta` grid: a strided full pass seeds the best
/// known level, then the remaining grid runs with pruning against it. Both
/// phases are deterministic and parallel over `beta`.
pub(crate) fn scan_betas(
    tau_prime: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
) -> Result<RobustSearch, AnError> {
    let grid = beta_grid(config, settings);
    let stride = coarse_stride(grid.len());
    let mut outcomes: Vec<Option<InnerRun>> = (0..grid.len()).map(|_| None).collect();

    let coarse: Vec<(usize, Result<InnerRun, AnError>)> = (0..grid.len())
        .step_by(stride)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            (
                j,
                robust_inner_impl(grid[j], tau_prime, config, settings, use_an, None),
            )
        })
        .collect();
    for (j, run) in coarse {
        outcomes[j] = Some(run?);
    }

    let prune = outcomes
        .iter()
        .flatten()
        .filter_map(|r| match &r.outcome {
            InnerOutcome::Solved(sol) => Some(sol.eta),
            _ => None,
        })
        .fold(None, |acc: Option<f64>, eta| {
            Some(acc.map_or(eta, |a| a.max(eta)))
        });

    let fine: Vec<(usize, Result<InnerRun, AnError>)> = (0..grid.len())
        .filter(|j| outcomes[*j].is_none())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            (
                j,
                robust_inner_impl(grid[j], tau_prime, config, settings, use_an, prune),
            )
        })
        .collect();
    for (j, run) in fine {
        outcomes[j] = Some(run?);
    }

    let mut best: Option<RobustInnerSolution> = None;
    let mut solves = 0usize;
    for run in outcomes.into_iter().flatten() {
        solves += run.solves;
        if let InnerOutcome::Solved(sol) = run.outcome {
            // Ascending grid plus strict improvement keeps the smallest beta
            // among ties.
            if best.as_ref().map_or(true, |b| sol.eta > b.eta) {
                best = Some(*sol);
            }
        }
    }
    Ok(RobustSearch { best, solves })
}

fn build_robust_point(
    tau_ms: f64,
    eta: f64,
    triple: CovarianceTriple,
    solver_calls: usize,
    config: &SystemConfig,
) -> RatePoint {
    let (rc, r0, ra) = rank_diagnostics(&triple);
    let wc = exact_worst_case(&triple, &config.channel_set);
    RatePoint {
        tau_ms,
        tau_prime: tau_ms.exp2() - 1.0,
        secrecy_rate: eta.log2().max(0.0),
        multicast_rate: wc.multicast_rate,
        diagnostics: Diagnostics {
            rank_ratio_qc: rc,
            rank_ratio_q0: r0,
            rank_ratio_qa: ra,
            qoms_slack: wc.multicast_rate - tau_ms,
            solver_calls,
        },
        triple,
    }
}

pub(crate) fn robust_qoms_srm_impl(
    tau_ms: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
) -> Result<RatePoint, AnError> {
    if !(tau_ms >= 0.0) || !tau_ms.is_finite() {
        return Err(AnError::Validation(format!(
            "tau_ms must be >= 0, got {tau_ms}"
        )));
    }
    let tau_prime = tau_ms.exp2() - 1.0;
    let search = scan_betas(tau_prime, config, settings, use_an)?;
    match search.best {
        Some(sol) => {
            // Widen the relief once if the first polish fails; the certified
            // level only drops by a negligible relative amount.
            let mut solves = search.solves;
            let mut polished = None;
            for relief in [LEVEL_RELIEF, 1e-5] {
                solves += 1;
                polished =
                    robust_power_polish(sol.beta, sol.eta, relief, tau_prime, config, use_an)?;
                if polished.is_some() {
                    break;
                }
            }
            let triple = polished.unwrap_or_else(|| sol.triple());
            Ok(build_robust_point(tau_ms, sol.eta, triple, solves, config))
        }
        None => {
            // Either the target exceeds the worst-case capacity, or it sits
            // exactly at it and every level above 1 is knife-edge
            // infeasible. Decide with one capacity solve.
            let (tau_max_wc, q0_cap) = wc_multicast_capacity(config)?;
            if tau_ms <= tau_max_wc + 1e-9 {
                let n = config.channel_set.n_tx();
                let triple = CovarianceTriple::from_solver(
                    &q0_cap,
                    &HermitianMatrix::zeros(n),
                    &HermitianMatrix::zeros(n),
                );
                Ok(build_robust_point(
                    tau_ms,
                    1.0,
                    triple,
                    search.solves + 1,
                    config,
                ))
            } else {
                Err(AnError::Infeasible(format!(
                    "worst-case multicast rate {tau_ms} exceeds capacity {tau_max_wc}"
                )))
            }
        }
    }
}

/// Maximizes the certified worst-case secrecy rate under the worst-case QoMS
/// floor `tau_ms`.
pub fn robust_qoms_srm(
    tau_ms: f64,
    config: &SystemConfig,
    settings: &RobustSettings,
) -> Result<RatePoint, AnError> {
    robust_qoms_srm_impl(tau_ms, config, settings, true)
}

pub(crate) fn robust_sweep_impl(
    config: &SystemConfig,
    settings: &RobustSettings,
    use_an: bool,
    scheme: Scheme,
) -> Result<RegionResult, AnError> {
    let (tau_max, q0_cap) = wc_multicast_capacity(config)?;
    let n = config.channel_set.n_tx();
    let endpoint_triple = CovarianceTriple::from_solver(
        &q0_cap,
        &HermitianMatrix::zeros(n),
        &HermitianMatrix::zeros(n),
    );
    let mut points = Vec::new();
    let mut failures = Vec::new();
    let mut total = 1usize;

    if tau_max < 1e-12 {
        points.push(build_robust_point(0.0, 1.0, endpoint_triple, 0, config));
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
        match robust_qoms_srm_impl(tau_ms, config, settings, use_an) {
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
    points.push(build_robust_point(tau_max, 1.0, endpoint_triple, 0, config));

    Ok(RegionResult {
        scheme,
        points,
        failures,
        tau_max,
        total_solver_calls: total,
    })
}

/// Sweeps the worst-case QoMS grid and returns the robust region boundary.
pub fn robust_region_sweep(
    config: &SystemConfig,
    settings: &RobustSettings,
) -> Result<RegionResult, AnError> {
    robust_sweep_impl(config, settings, true, Scheme::Robust)
}
