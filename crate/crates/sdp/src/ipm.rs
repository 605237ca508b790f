//! Homogeneous self-dual interior-point method for block conic problems.
//!
//! The compiled problem `maximize f.z  s.t.  c_j + sum_r (q0 + N z)_r F_jr >= 0`
//! is treated as the dual side of the standard conic pair. The embedding
//! carries primal `x`, dual `(y, s)`, and homogenizing scalars `(tau, kappa)`;
//! an optimal point has `tau > 0` and yields `z = y / tau`, while `tau -> 0`
//! with `kappa > 0` exposes an infeasibility or unboundedness certificate.
//!
//! Search directions use Nesterov-Todd scaling with a Mehrotra
//! predictor-corrector step. After the stopping tolerances are first met the
//! solver keeps iterating while the complementarity measure still shrinks,
//! which sharpens low-rank structure in the returned matrices.

use nalgebra::{DMatrix, DVector};

use crate::problem::{coords_to_hermitian, CompiledProblem, VarKind};
use crate::HermitianMatrix;

/// Solver configuration.
#[derive(Debug, Clone)]
pub struct SolveSettings {
    /// Hard iteration cap.
    pub max_iter: usize,
    /// Relative duality gap at which an iterate is accepted.
    pub gap_tol: f64,
    /// Relative primal and dual residual tolerance.
    pub feas_tol: f64,
    /// Complementarity target for the sharpening phase; iteration continues
    /// past acceptance until `mu` falls below this or stalls.
    pub sharpen_mu: f64,
}

impl Default for SolveSettings {
    fn default() -> Self {
        SolveSettings {
            max_iter: 200,
            gap_tol: 1e-7,
            feas_tol: 1e-8,
            sharpen_mu: 1e-10,
        }
    }
}

/// Terminal classification of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Accepted primal-dual pair within tolerances.
    Optimal,
    /// Certificate that the constraints admit no solution.
    Infeasible,
    /// Certificate of an improving ray.
    Unbounded,
    /// No certificate and no accepted iterate within the iteration budget.
    NumericalFailure,
}

/// Result of a solve, including recovered variable values when optimal.
#[derive(Debug, Clone)]
pub struct SdpSolution {
    /// Terminal status.
    pub status: SolveStatus,
    /// Objective value (including constant offset) when optimal.
    pub objective: Option<f64>,
    /// Relative duality gap of the returned iterate.
    pub duality_gap: Option<f64>,
    /// Interior-point iterations performed.
    pub iterations: usize,
    pub(crate) values: Option<RecoveredValues>,
}

#[derive(Debug, Clone)]
pub(crate) struct RecoveredValues {
    pub q: DVector<f64>,
    pub offsets: Vec<usize>,
    pub kinds: Vec<VarKind>,
}

impl SdpSolution {
    /// True when the solver produced an accepted optimal iterate.
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }

    /// Value of a Hermitian variable, when optimal.
    ///
    /// # Panics
    ///
    /// Panics if `var` does not refer to a Hermitian variable of the solved
    /// problem.
    pub fn hermitian_value(&self, var: crate::VarId) -> Option<HermitianMatrix> {
        let vals = self.values.as_ref()?;
        let dim = match vals.kinds[var.0] {
            VarKind::HermitianPsd { dim } => dim,
            _ => panic!("variable is not Hermitian"),
        };
        let base = vals.offsets[var.0];
        let coords: Vec<f64> = (0..dim * dim).map(|k| vals.q[base + k]).collect();
        Some(coords_to_hermitian(dim, &coords))
    }

    /// Value of a scalar variable, when optimal.
    ///
    /// # Panics
    ///
    /// Panics if `var` refers to a Hermitian variable.
    pub fn scalar_value(&self, var: crate::VarId) -> Option<f64> {
        let vals = self.values.as_ref()?;
        match vals.kinds[var.0] {
            VarKind::HermitianPsd { .. } => panic!("variable is not scalar"),
            _ => Some(vals.q[vals.offsets[var.0]]),
        }
    }

    pub(crate) fn bare(status: SolveStatus, iterations: usize) -> Self {
        SdpSolution {
            status,
            objective: None,
            duality_gap: None,
            iterations,
            values: None,
        }
    }
}

/// Fraction of the distance to the cone boundary taken each step.
const STEP_FRACTION: f64 = 0.98;
/// Centering exponent floor and cap.
const SIGMA_MIN: f64 = 1e-8;
/// Ray-dominance threshold for certificate checks.
const RAY_RATIO: f64 = 1e7;

/// Nesterov-Todd scaling data for one block.
struct Scaling {
    r: DMatrix<f64>,
    r_inv: DMatrix<f64>,
    g: DMatrix<f64>,
    lambda: DVector<f64>,
}

/// Factor a symmetric positive definite matrix as `Q D^{1/2}` through its
/// eigendecomposition. Returns `None` if any eigenvalue is too small.
fn spd_factor(m: &DMatrix<f64>) -> Option<(DMatrix<f64>, DVector<f64>, DMatrix<f64>)> {
    let eig = m.clone().symmetric_eigen();
    let lam_max = eig.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b));
    if !(lam_max.is_finite() && lam_max > 0.0) {
        return None;
    }
    for &lam in eig.eigenvalues.iter() {
        if !(lam > lam_max * 1e-15 && lam.is_finite()) {
            return None;
        }
    }
    let d = m.nrows();
    let mut factor = eig.eigenvectors.clone();
    let mut inv = eig.eigenvectors.transpose();
    for k in 0..d {
        let s = eig.eigenvalues[k].sqrt();
        factor.column_mut(k).scale_mut(s);
        inv.row_mut(k).scale_mut(1.0 / s);
    }
    Some((factor, eig.eigenvalues, inv))
}

fn nt_scaling(x: &DMatrix<f64>, s: &DMatrix<f64>) -> Option<Scaling> {
    let (l1, _, l1_inv) = spd_factor(x)?;
    let (l2, _, _) = spd_factor(s)?;
    let prod = l2.transpose() * &l1;
    let svd = prod.svd(true, true);
    let u = svd.u.as_ref()?;
    let vt = svd.v_t.as_ref()?;
    let sig = &svd.singular_values;
    let smax = sig.iter().fold(0.0_f64, |a, &b| a.max(b));
    if !(smax.is_finite() && smax > 0.0) {
        return None;
    }
    for &sv in sig.iter() {
        if !(sv > smax * 1e-15) {
            return None;
        }
    }
    let d = x.nrows();
    // R = L1 V Sigma^{-1/2}, R^{-1} = Sigma^{1/2} V^T L1^{-1}.
    let v = vt.transpose();
    let mut r = &l1 * &v;
    let mut r_inv = vt * &l1_inv;
    for k in 0..d {
        let sq = sig[k].sqrt();
        r.column_mut(k).scale_mut(1.0 / sq);
        r_inv.row_mut(k).scale_mut(sq);
    }
    let g = &r * r.transpose();
    let _ = u;
    Some(Scaling {
        r,
        r_inv,
        g,
        lambda: sig.clone_owned(),
    })
}

/// Largest step `alpha` keeping `Lambda + alpha * d` PSD, for diagonal
/// `Lambda` given by `lambda`. Returns `f64::INFINITY` when unbounded.
fn step_to_boundary(lambda: &DVector<f64>, dir: &DMatrix<f64>) -> f64 {
    let d = lambda.len();
    let mut scaled = dir.clone();
    for i in 0..d {
        for j in 0..d {
            scaled[(i, j)] /= (lambda[i] * lambda[j]).sqrt();
        }
    }
    let min_eig = scaled
        .symmetric_eigenvalues()
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    if min_eig >= 0.0 {
        f64::INFINITY
    } else {
        1.0 / (-min_eig)
    }
}

fn scalar_step(v: f64, dv: f64) -> f64 {
    if dv >= 0.0 {
        f64::INFINITY
    } else {
        -v / dv
    }
}

struct Iterate {
    y: DVector<f64>,
    x: Vec<DMatrix<f64>>,
    s: Vec<DMatrix<f64>>,
    tau: f64,
    kappa: f64,
}

impl Iterate {
    fn initial(p: &CompiledProblem) -> Self {
        Iterate {
            y: DVector::zeros(p.m_red()),
            x: p.blocks.iter().map(|b| DMatrix::identity(b.dim, b.dim)).collect(),
            s: p.blocks.iter().map(|b| DMatrix::identity(b.dim, b.dim)).collect(),
            tau: 1.0,
            kappa: 1.0,
        }
    }
}

fn frob_inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(p, q)| p * q).sum()
}

/// Solves the compiled problem.
pub(crate) fn solve_compiled(p: &CompiledProblem, settings: &SolveSettings) -> SdpSolution {
    let m = p.m_red();
    let nblocks = p.blocks.len();
    let nu: f64 = p.blocks.iter().map(|b| b.dim as f64).sum();
    let b_vec = &p.f;
    let b_norm = b_vec.norm();
    let c_norm: f64 = p.blocks.iter().map(|bl| bl.c.norm_squared()).sum::<f64>().sqrt();

    // L(w) = sum_r w_r F_jr per block, over full coordinates.
    let lincomb = |w: &DVector<f64>| -> Vec<DMatrix<f64>> {
        p.blocks
            .iter()
            .map(|bl| {
                let mut acc = DMatrix::zeros(bl.dim, bl.dim);
                for (r, f) in &bl.terms {
                    let wr = w[*r];
                    if wr != 0.0 {
                        acc += f * wr;
                    }
                }
                acc
            })
            .collect()
    };
    // A x = N^T v with v_r = -sum_j <F_jr, X_j>.
    let apply_a = |x: &[DMatrix<f64>]| -> DVector<f64> {
        let mut v = DVector::zeros(p.m_full);
        for (bl, xj) in p.blocks.iter().zip(x.iter()) {
            for (r, f) in &bl.terms {
                v[*r] -= frob_inner(f, xj);
            }
        }
        p.nmap.transpose() * v
    };
    let apply_at = |y: &DVector<f64>| -> Vec<DMatrix<f64>> {
        let w = &p.nmap * y;
        let mut out = lincomb(&w);
        for o in &mut out {
            o.neg_mut();
        }
        out
    };
    let c_dot = |x: &[DMatrix<f64>]| -> f64 {
        p.blocks.iter().zip(x.iter()).map(|(bl, xj)| frob_inner(&bl.c, xj)).sum()
    };

    let mut it = Iterate::initial(p);
    let mut best: Option<(Iterate, f64, f64, usize)> = None; // iterate, mu, relgap, iter
    let mut iterations = 0;
    let mut last_mu = f64::INFINITY;
    let mut stall_count = 0;

    for iter in 0..settings.max_iter {
        iterations = iter + 1;

        // Residuals.
        let ax = apply_a(&it.x);
        let r1 = &ax - b_vec * it.tau;
        let aty = apply_at(&it.y);
        let r2: Vec<DMatrix<f64>> = (0..nblocks)
            .map(|j| -&aty[j] - &it.s[j] + &p.blocks[j].c * it.tau)
            .collect();
        let cx = c_dot(&it.x);
        let by = b_vec.dot(&it.y);
        let r3 = by - cx - it.kappa;

        let gap_inner: f64 = it.x.iter().zip(it.s.iter()).map(|(x, s)| frob_inner(x, s)).sum();
        let mu = (gap_inner + it.tau * it.kappa) / (nu + 1.0);

        // Normalized convergence measures.
        let pobj = cx / it.tau;
        let dobj = by / it.tau;
        let pres = r1.norm() / (it.tau * (1.0 + b_norm));
        let dres_sq: f64 = r2.iter().map(|r| r.norm_squared()).sum();
        let dres = dres_sq.sqrt() / (it.tau * (1.0 + c_norm));
        let relgap = (pobj - dobj).abs() / (1.0 + pobj.abs().max(dobj.abs()));

        let accepted = pres <= settings.feas_tol && dres <= settings.feas_tol && relgap <= settings.gap_tol;
        if accepted {
            let better = match &best {
                Some((_, bmu, _, _)) => mu < *bmu,
                None => true,
            };
            if better {
                let snapshot = Iterate {
                    y: it.y.clone(),
                    x: it.x.clone(),
                    s: it.s.clone(),
                    tau: it.tau,
                    kappa: it.kappa,
                };
                best = Some((snapshot, mu, relgap, iterations));
            }
            if mu <= settings.sharpen_mu {
                break;
            }
        }

        // Stall detection, active once an iterate has been banked.
        if best.is_some() {
            if mu > last_mu * 0.85 {
                stall_count += 1;
                if stall_count >= 3 {
                    break;
                }
            } else {
                stall_count = 0;
            }
        }
        last_mu = mu;

        // Infeasibility and unboundedness certificates on the raw iterate,
        // each normalized by the candidate ray's own magnitude.
        if it.kappa / it.tau > RAY_RATIO {
            let xscale: f64 = it.x.iter().map(|x| x.trace()).sum();
            if xscale > 1e-12 && cx < -1e-9 * xscale && ax.norm() <= 1e-7 * xscale {
                return SdpSolution::bare(SolveStatus::Infeasible, iterations);
            }
            let yscale = it.y.norm();
            let ray_res_sq: f64 = (0..nblocks)
                .map(|j| (&aty[j] + &it.s[j]).norm_squared())
                .sum();
            if yscale > 1e-12 && by > 1e-9 * yscale && ray_res_sq.sqrt() <= 1e-7 * yscale {
                return SdpSolution::bare(SolveStatus::Unbounded, iterations);
            }
        }

        // Nesterov-Todd scalings.
        let mut scalings = Vec::with_capacity(nblocks);
        let mut scaling_ok = true;
        for j in 0..nblocks {
            match nt_scaling(&it.x[j], &it.s[j]) {
                Some(sc) => scalings.push(sc),
                None => {
                    scaling_ok = false;
                    break;
                }
            }
        }
        if !scaling_ok {
            break;
        }

        // Schur complement M = A G A^T over reduced coordinates, plus the
        // composite vectors that reuse the per-block sandwiches.
        let mut m_full = DMatrix::zeros(p.m_full, p.m_full);
        let mut u_full = DVector::zeros(p.m_full);
        let mut ctgc = 0.0;
        for (j, bl) in p.blocks.iter().enumerate() {
            let g = &scalings[j].g;
            let gcg = g * &bl.c * g;
            ctgc += frob_inner(&bl.c, &gcg);
            let sandwiches: Vec<(usize, DMatrix<f64>)> = bl
                .terms
                .iter()
                .map(|(r, f)| (*r, g * f * g))
                .collect();
            for (r, gfg) in &sandwiches {
                u_full[*r] -= frob_inner(&bl.c, gfg);
                for (r2, f2) in &bl.terms {
                    // Exploit symmetry of the pairing within the block.
                    if r2 >= r {
                        let val = frob_inner(gfg, f2);
                        m_full[(*r, *r2)] += val;
                        if r2 != r {
                            m_full[(*r2, *r)] += val;
                        }
                    }
                }
            }
        }
        let m_red = p.nmap.transpose() * &m_full * &p.nmap;
        let u = p.nmap.transpose() * u_full;

        // Factor M with escalating diagonal regularization.
        let diag_max = (0..m).map(|i| m_red[(i, i)].abs()).fold(1e-300, f64::max);
        let mut chol = None;
        let mut reg = 0.0;
        for k in 0..6 {
            let mut trial = m_red.clone();
            if k > 0 {
                reg = diag_max * 1e-12 * 100f64.powi(k - 1);
                for i in 0..m {
                    trial[(i, i)] += reg;
                }
            }
            if let Some(c) = trial.cholesky() {
                chol = Some(c);
                break;
            }
        }
        let chol = match chol {
            Some(c) => c,
            None => break,
        };
        let _ = reg;
        let msolve = |rhs: &DVector<f64>| -> DVector<f64> {
            let mut sol = chol.solve(rhs);
            // One round of iterative refinement.
            let resid = rhs - &m_red * &sol;
            sol += chol.solve(&resid);
            sol
        };

        let g1 = msolve(&(&u + b_vec));

        // Direction solve shared by predictor and corrector.
        let solve_dir = |d_s: &Vec<DMatrix<f64>>, d_kappa: f64, eta: f64| -> Option<_> {
            // A W^T d_s, A G r2, and the c-pairings.
            let mut awt_full = DVector::zeros(p.m_full);
            let mut agr2_full = DVector::zeros(p.m_full);
            let mut ct_wt_ds = 0.0;
            let mut ct_g_r2 = 0.0;
            let mut wt_ds = Vec::with_capacity(nblocks);
            for (j, bl) in p.blocks.iter().enumerate() {
                let sc = &scalings[j];
                let wtd = &sc.r * &d_s[j] * sc.r.transpose();
                let gr2 = &sc.g * &r2[j] * &sc.g;
                ct_wt_ds += frob_inner(&bl.c, &wtd);
                ct_g_r2 += frob_inner(&bl.c, &gr2);
                for (r, f) in &bl.terms {
                    awt_full[*r] -= frob_inner(f, &wtd);
                    agr2_full[*r] -= frob_inner(f, &gr2);
                }
                wt_ds.push(wtd);
            }
            let awt = p.nmap.transpose() * awt_full;
            let agr2 = p.nmap.transpose() * agr2_full;

            let rhs1 = -&r1 * eta - &awt + &agr2 * eta;
            let g2 = msolve(&rhs1);
            let rhs3 = -eta * r3 + ct_wt_ds - eta * ct_g_r2 + d_kappa / it.tau;
            let bmu = b_vec - &u;
            // The denominator is positive in exact arithmetic but is formed
            // by cancellation of large terms when the objective lies in the
            // range of the constraint operator; clamp it from below.
            let raw = bmu.dot(&g1) + ctgc + it.kappa / it.tau;
            let scale = bmu.dot(&g1).abs() + ctgc.abs() + it.kappa / it.tau;
            let denom = raw.max(1e-12 * scale);
            if !(denom.is_finite() && denom > 0.0) {
                return None;
            }
            let d_tau = (rhs3 - bmu.dot(&g2)) / denom;
            let d_y = &g2 + &g1 * d_tau;
            let aty_d = apply_at(&d_y);
            let mut d_s_out = Vec::with_capacity(nblocks);
            let mut d_x = Vec::with_capacity(nblocks);
            for (j, bl) in p.blocks.iter().enumerate() {
                let ds_j = -&aty_d[j] + &bl.c * d_tau + &r2[j] * eta;
                let sc = &scalings[j];
                let dx_j = &wt_ds[j] - &sc.g * &ds_j * &sc.g;
                d_s_out.push(ds_j);
                d_x.push(dx_j);
            }
            let d_kappa_out = (d_kappa - it.kappa * d_tau) / it.tau;
            Some((d_y, d_x, d_s_out, d_tau, d_kappa_out))
        };

        // Predictor: pure affine direction.
        let d_s_aff: Vec<DMatrix<f64>> = scalings
            .iter()
            .map(|sc| -DMatrix::from_diagonal(&sc.lambda))
            .collect();
        let aff = match solve_dir(&d_s_aff, -it.tau * it.kappa, 1.0) {
            Some(d) => d,
            None => break,
        };
        let (_, ref dx_aff, ref ds_aff, dtau_aff, dkappa_aff) = aff;

        // Scaled affine directions for the step length and corrector.
        let scaled_aff: Vec<(DMatrix<f64>, DMatrix<f64>)> = (0..nblocks)
            .map(|j| {
                let sc = &scalings[j];
                let xs = &sc.r_inv * &dx_aff[j] * sc.r_inv.transpose();
                let ss = sc.r.transpose() * &ds_aff[j] * &sc.r;
                (xs, ss)
            })
            .collect();
        let mut alpha_aff = f64::INFINITY;
        for (j, (xs, ss)) in scaled_aff.iter().enumerate() {
            alpha_aff = alpha_aff
                .min(step_to_boundary(&scalings[j].lambda, xs))
                .min(step_to_boundary(&scalings[j].lambda, ss));
        }
        alpha_aff = alpha_aff
            .min(scalar_step(it.tau, dtau_aff))
            .min(scalar_step(it.kappa, dkappa_aff))
            .min(1.0);

        // Centering weight from the affine complementarity prediction.
        let mut gap_aff = (it.tau + alpha_aff * dtau_aff) * (it.kappa + alpha_aff * dkappa_aff);
        for (j, (xs, ss)) in scaled_aff.iter().enumerate() {
            let lam = &scalings[j].lambda;
            let d = lam.len();
            let mut acc = 0.0;
            for a in 0..d {
                for b in 0..d {
                    let xv = if a == b { lam[a] + alpha_aff * xs[(a, b)] } else { alpha_aff * xs[(a, b)] };
                    let sv = if a == b { lam[a] + alpha_aff * ss[(a, b)] } else { alpha_aff * ss[(a, b)] };
                    acc += xv * sv;
                }
            }
            gap_aff += acc;
        }
        let mu_aff = (gap_aff / (nu + 1.0)).max(0.0);
        let sigma = ((mu_aff / mu).powi(3)).clamp(SIGMA_MIN, 1.0 - SIGMA_MIN);
        let eta = 1.0 - sigma;

        // Corrector target in scaled space.
        let d_s_corr: Vec<DMatrix<f64>> = (0..nblocks)
            .map(|j| {
                let lam = &scalings[j].lambda;
                let (xs, ss) = &scaled_aff[j];
                let prod = xs * ss;
                let d = lam.len();
                DMatrix::from_fn(d, d, |a, b| {
                    let sym = 0.5 * (prod[(a, b)] + prod[(b, a)]);
                    let target = if a == b { sigma * mu - lam[a] * lam[a] } else { 0.0 };
                    2.0 * (target - sym) / (lam[a] + lam[b])
                })
            })
            .collect();
        let d_kappa_corr = sigma * mu - it.tau * it.kappa - dtau_aff * dkappa_aff;

        let (dy, dx, ds, dtau, dkappa) = match solve_dir(&d_s_corr, d_kappa_corr, eta) {
            Some(d) => d,
            None => break,
        };

        // Step length for the combined direction.
        let mut alpha = f64::INFINITY;
        for j in 0..nblocks {
            let sc = &scalings[j];
            let xs = &sc.r_inv * &dx[j] * sc.r_inv.transpose();
            let ss = sc.r.transpose() * &ds[j] * &sc.r;
            alpha = alpha
                .min(step_to_boundary(&sc.lambda, &xs))
                .min(step_to_boundary(&sc.lambda, &ss));
        }
        alpha = alpha
            .min(scalar_step(it.tau, dtau))
            .min(scalar_step(it.kappa, dkappa));
        if !alpha.is_finite() && alpha != f64::INFINITY {
            break;
        }
        let alpha = (STEP_FRACTION * alpha).min(1.0);
        if !(alpha > 0.0 && alpha.is_finite()) {
            break;
        }

        it.y += &dy * alpha;
        for j in 0..nblocks {
            it.x[j] += &dx[j] * alpha;
            it.s[j] += &ds[j] * alpha;
            // Re-symmetrize to suppress rounding drift.
            let xs = (&it.x[j] + it.x[j].transpose()) * 0.5;
            let ss = (&it.s[j] + it.s[j].transpose()) * 0.5;
            it.x[j] = xs;
            it.s[j] = ss;
        }
        it.tau += alpha * dtau;
        it.kappa += alpha * dkappa;
        if !(it.tau.is_finite() && it.tau > 0.0 && it.kappa.is_finite() && it.kappa >= 0.0) {
            break;
        }
    }

    match best {
        Some((bit, mu, relgap, _)) => {
            let z = &bit.y / bit.tau;
            let q = p.recover_q(&z);
            let objective = p.f.dot(&z) + p.obj_offset;
            let _ = mu;
            SdpSolution {
                status: SolveStatus::Optimal,
                objective: Some(objective),
                duality_gap: Some(relgap),
                iterations,
                values: Some(RecoveredValues {
                    q,
                    offsets: p.offsets.clone(),
                    kinds: p.kinds.clone(),
                }),
            }
        }
        None => SdpSolution::bare(SolveStatus::NumericalFailure, iterations),
    }
}
