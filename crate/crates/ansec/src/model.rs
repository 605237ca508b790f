//! Channel model, transmit covariances, and rate evaluation.
//!
//! Channels are complex row vectors of length `n_tx`. Receiver 1 (index 0)
//! gets the confidential stream; every other receiver is treated as an
//! eavesdropper on it. Each channel may carry a spherical uncertainty radius:
//! the true channel is `h + e` with `||e|| <= radius` around the known center
//! `h`. A radius of zero means the channel is known exactly.
//!
//! Besides plain rate evaluation on the center channels, this module offers
//! two worst-case evaluators over the uncertainty balls: a seeded sampling
//! estimate and an exact one built on trust-region subproblems.

use crate::AnError;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sdp::{embed_hermitian, extract_hermitian, HermitianMatrix};

/// Converts a power level in dB to linear scale (unit noise power).
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Default bisection tolerance for a given search granularity `eps` in bits.
///
/// Keeps the tolerance an order of magnitude inside the admissible range
/// `eps_b < 1 - 2^(-eps)` required by the robust grid construction.
pub fn default_bisection_tol(eps: f64) -> f64 {
    (1e-4f64).min((1.0 - (-eps).exp2()) / 10.0)
}

fn norm_sq(h: &[Complex64]) -> f64 {
    h.iter().map(|z| z.norm_sqr()).sum()
}

/// A set of receiver channels with per-receiver uncertainty radii.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    n_tx: usize,
    channels: Vec<Vec<Complex64>>,
    radii: Vec<f64>,
}

impl ChannelSet {
    /// Builds a channel set. `channels[0]` is the confidential receiver.
    ///
    /// Fails unless there are at least two receivers, every channel has
    /// `n_tx` finite entries, and every radius satisfies
    /// `0 <= radius < ||h||` for its channel.
    pub fn new(
        n_tx: usize,
        channels: Vec<Vec<Complex64>>,
        radii: Vec<f64>,
    ) -> Result<Self, AnError> {
        if n_tx == 0 {
            return Err(AnError::Validation("n_tx must be at least 1".into()));
        }
        if channels.len() < 2 {
            return Err(AnError::Validation(format!(
                "need at least 2 receivers, got {}",
                channels.len()
            )));
        }
        if radii.len() != channels.len() {
            return Err(AnError::Validation(format!(
                "{} radii for {} channels",
                radii.len(),
                channels.len()
            )));
        }
        for (k, h) in channels.iter().enumerate() {
            if h.len() != n_tx {
                return Err(AnError::Validation(format!(
                    "channel {} has {} entries, expected {}",
                    k + 1,
                    h.len(),
                    n_tx
                )));
            }
            if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(AnError::Validation(format!(
                    "channel {} has non-finite entries",
                    k + 1
                )));
            }
            let r = radii[k];
            if !r.is_finite() || r < 0.0 {
                return Err(AnError::Validation(format!(
                    "radius for receiver {} must be finite and nonnegative",
                    k + 1
                )));
            }
            if r >= norm_sq(h).sqrt() {
                return Err(AnError::Validation(format!(
                    "radius {} for receiver {} reaches the zero channel (||h|| = {})",
                    r,
                    k + 1,
                    norm_sq(h).sqrt()
                )));
            }
        }
        Ok(Self {
            n_tx,
            channels,
            radii,
        })
    }

    /// Builds a perfectly known channel set (all radii zero).
    pub fn perfect(n_tx: usize, channels: Vec<Vec<Complex64>>) -> Result<Self, AnError> {
        let radii = vec![0.0; channels.len()];
        Self::new(n_tx, channels, radii)
    }

    /// Number of transmit antennas.
    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    /// Number of receivers.
    pub fn k(&self) -> usize {
        self.channels.len()
    }

    /// Channel row vector of receiver `k` (0-based; 0 is confidential).
    pub fn channel(&self, k: usize) -> &[Complex64] {
        &self.channels[k]
    }

    /// Uncertainty radius of receiver `k`.
    pub fn radius(&self, k: usize) -> f64 {
        self.radii[k]
    }

    /// Squared Euclidean norm of channel `k`.
    pub fn norm_sq(&self, k: usize) -> f64 {
        norm_sq(&self.channels[k])
    }

    /// True if any receiver carries a positive uncertainty radius.
    pub fn is_robust(&self) -> bool {
        self.radii.iter().any(|&r| r > 0.0)
    }

    /// Copy with all radii set to zero.
    pub fn to_perfect(&self) -> Self {
        Self {
            n_tx: self.n_tx,
            channels: self.channels.clone(),
            radii: vec![0.0; self.channels.len()],
        }
    }

    /// Copy with replacement radii, revalidated.
    pub fn with_radii(&self, radii: Vec<f64>) -> Result<Self, AnError> {
        Self::new(self.n_tx, self.channels.clone(), radii)
    }
}

/// Full problem description: channels plus power and search controls.
#[derive(Debug, Clone)]
pub struct SystemConfig {
    pub channel_set: ChannelSet,
    /// Transmit power budget, linear scale (noise power is 1).
    pub power: f64,
    /// Target accuracy of the secrecy-rate search, in bits.
    pub search_epsilon: f64,
    /// Absolute tolerance of inner bisections.
    pub bisection_tol: f64,
    /// Number of QoMS grid points in a region sweep.
    pub grid_points: usize,
}

impl SystemConfig {
    /// Validates parameter ranges and the coupling `eps_b < 1 - 2^(-eps)`
    /// needed by the robust search grid.
    pub fn new(
        channel_set: ChannelSet,
        power: f64,
        search_epsilon: f64,
        bisection_tol: f64,
        grid_points: usize,
    ) -> Result<Self, AnError> {
        if !power.is_finite() || power < 0.0 {
            return Err(AnError::Validation(format!(
                "power must be finite and nonnegative, got {power}"
            )));
        }
        if !search_epsilon.is_finite() || search_epsilon <= 0.0 {
            return Err(AnError::Validation(format!(
                "search_epsilon must be positive, got {search_epsilon}"
            )));
        }
        if !bisection_tol.is_finite() || bisection_tol <= 0.0 {
            return Err(AnError::Validation(format!(
                "bisection_tol must be positive, got {bisection_tol}"
            )));
        }
        let cap = 1.0 - (-search_epsilon).exp2();
        if bisection_tol >= cap {
            return Err(AnError::Validation(format!(
                "bisection_tol {bisection_tol} must stay below 1 - 2^(-eps) = {cap}"
            )));
        }
        if grid_points < 2 {
            return Err(AnError::Validation(format!(
                "grid_points must be at least 2, got {grid_points}"
            )));
        }
        Ok(Self {
            channel_set,
            power,
            search_epsilon,
            bisection_tol,
            grid_points,
        })
    }
}

/// Transmit covariances of the three signal components: multicast `q0`,
/// confidential `qc`, artificial noise `qa`.
#[derive(Debug, Clone)]
pub struct CovarianceTriple {
    pub q0: HermitianMatrix,
    pub qc: HermitianMatrix,
    pub qa: HermitianMatrix,
}

/// Clamps negative eigenvalues of a nearly-PSD matrix to zero.
fn clip_psd(m: &HermitianMatrix) -> HermitianMatrix {
    let eig = SymmetricEigen::new(embed_hermitian(m));
    let dim = eig.eigenvalues.len();
    let mut rebuilt = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let lam = eig.eigenvalues[i].max(0.0);
        if lam > 0.0 {
            let v = eig.eigenvectors.column(i);
            rebuilt += lam * v * v.transpose();
        }
    }
    extract_hermitian(&rebuilt)
}

impl CovarianceTriple {
    /// Builds a triple, checking matching dimensions and near-positive
    /// semidefiniteness (eigenvalues no lower than `-1e-9` relative to the
    /// matrix scale).
    pub fn new(
        q0: HermitianMatrix,
        qc: HermitianMatrix,
        qa: HermitianMatrix,
    ) -> Result<Self, AnError> {
        let dim = q0.dim();
        if qc.dim() != dim || qa.dim() != dim {
            return Err(AnError::Validation(
                "covariance dimensions do not match".into(),
            ));
        }
        for (name, m) in [("Q0", &q0), ("Qc", &qc), ("Qa", &qa)] {
            let floor = -1e-9 * (1.0 + m.trace().abs());
            let min_eig = m.min_eigenvalue();
            if min_eig < floor {
                return Err(AnError::Validation(format!(
                    "{name} has eigenvalue {min_eig} below the PSD tolerance"
                )));
            }
        }
        Ok(Self { q0, qc, qa })
    }

    /// Builds a triple from solver output, clipping small negative
    /// eigenvalues to zero first.
    ///
    /// # Panics
    /// Panics if the dimensions do not match.
    pub fn from_solver(
        q0: &HermitianMatrix,
        qc: &HermitianMatrix,
        qa: &HermitianMatrix,
    ) -> Self {
        assert!(qc.dim() == q0.dim() && qa.dim() == q0.dim());
        Self {
            q0: clip_psd(q0),
            qc: clip_psd(qc),
            qa: clip_psd(qa),
        }
    }

    /// All-zero triple of the given dimension.
    pub fn zero(dim: usize) -> Self {
        Self {
            q0: HermitianMatrix::zeros(dim),
            qc: HermitianMatrix::zeros(dim),
            qa: HermitianMatrix::zeros(dim),
        }
    }

    /// Total transmit power `Tr(Q0 + Qc + Qa)`.
    pub fn total_power(&self) -> f64 {
        self.q0.trace() + self.qc.trace() + self.qa.trace()
    }

    /// True if the total power stays within the budget up to a relative
    /// slack of `1e-6`.
    pub fn within_power(&self, power: f64) -> bool {
        self.total_power() <= power * (1.0 + 1e-6) + 1e-12
    }
}

/// Per-receiver and aggregate rates of one transmit design, in bits.
#[derive(Debug, Clone)]
pub struct RateBreakdown {
    /// Multicast rate seen by each receiver (index 0 is receiver 1).
    pub multicast_per_rx: Vec<f64>,
    /// Confidential-stream rate at receiver 1.
    pub legit_rate: f64,
    /// Confidential-stream rate leaked to each other receiver
    /// (index 0 is receiver 2).
    pub eaves_per_rx: Vec<f64>,
    /// `min` of `multicast_per_rx`.
    pub multicast_rate: f64,
    /// `legit_rate` minus the largest leakage rate, clamped to zero.
    pub secrecy_rate: f64,
}

fn assemble(m_sinrs: Vec<f64>, b_sinr: f64, e_sinrs: Vec<f64>) -> RateBreakdown {
    let multicast_per_rx: Vec<f64> = m_sinrs.iter().map(|s| (1.0 + s).log2()).collect();
    let legit_rate = (1.0 + b_sinr).log2();
    let eaves_per_rx: Vec<f64> = e_sinrs.iter().map(|s| (1.0 + s).log2()).collect();
    let multicast_rate = multicast_per_rx.iter().cloned().fold(f64::INFINITY, f64::min);
    let worst_leak = eaves_per_rx.iter().cloned().fold(0.0, f64::max);
    let secrecy_rate = (legit_rate - worst_leak).max(0.0);
    RateBreakdown {
        multicast_per_rx,
        legit_rate,
        eaves_per_rx,
        multicast_rate,
        secrecy_rate,
    }
}

fn sinrs_for_channel(triple: &CovarianceTriple, h: &[Complex64]) -> (f64, f64) {
    let q0 = triple.q0.quad_form(h);
    let qc = triple.qc.quad_form(h);
    let qa = triple.qa.quad_form(h);
    let m_sinr = q0 / (1.0 + qc + qa);
    let cs_sinr = qc / (1.0 + qa);
    (m_sinr, cs_sinr)
}

/// Evaluates all rates on the center channels, ignoring uncertainty.
pub fn rates(triple: &CovarianceTriple, channels: &ChannelSet) -> RateBreakdown {
    let mut m_sinrs = Vec::with_capacity(channels.k());
    let mut e_sinrs = Vec::with_capacity(channels.k() - 1);
    let mut b_sinr = 0.0;
    for k in 0..channels.k() {
        let (m, c) = sinrs_for_channel(triple, channels.channel(k));
        m_sinrs.push(m);
        if k == 0 {
            b_sinr = c;
        } else {
            e_sinrs.push(c);
        }
    }
    assemble(m_sinrs, b_sinr, e_sinrs)
}

/// Squared-norm range of a channel over its uncertainty ball:
/// `((||h|| - eps)^2, (||h|| + eps)^2)`.
pub fn ball_extremes(h: &[Complex64], eps: f64) -> Result<(f64, f64), AnError> {
    let norm = norm_sq(h).sqrt();
    if eps < 0.0 || !eps.is_finite() {
        return Err(AnError::Validation(format!("invalid radius {eps}")));
    }
    if eps >= norm {
        return Err(AnError::Validation(format!(
            "radius {eps} reaches the zero channel (||h|| = {norm})"
        )));
    }
    Ok(((norm - eps).powi(2), (norm + eps).powi(2)))
}

/// Draws a point of the complex `dim`-ball of radius `eps`, uniformly in
/// volume, as a perturbation vector.
fn sample_ball(rng: &mut ChaCha8Rng, dim: usize, eps: f64) -> Vec<Complex64> {
    let mut dir = vec![0.0f64; 2 * dim];
    loop {
        let mut nrm = 0.0;
        for d in dir.iter_mut() {
            *d = rng.sample(StandardNormal);
            nrm += *d * *d;
        }
        if nrm > 1e-30 {
            let u: f64 = rng.random();
            let r = eps * u.powf(1.0 / (2.0 * dim as f64)) / nrm.sqrt();
            return (0..dim)
                .map(|j| Complex64::new(r * dir[j], r * dir[dim + j]))
                .collect();
        }
    }
}

fn add_vec(h: &[Complex64], e: &[Complex64]) -> Vec<Complex64> {
    h.iter().zip(e).map(|(a, b)| a + b).collect()
}

/// Worst-case rates over the uncertainty balls, estimated by seeded sampling.
///
/// Each receiver's ball is sampled independently: `n_samples` uniform draws
/// plus the center and the two radial extremes along the channel direction.
/// Multicast and legitimate rates take the minimum over the ball, leakage
/// rates the maximum. Identical seeds give identical draws, and for a fixed
/// seed the estimate is monotone in the radii.
pub fn worst_case_eval(
    triple: &CovarianceTriple,
    channels: &ChannelSet,
    n_samples: usize,
    seed: u64,
) -> RateBreakdown {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = channels.n_tx();
    let mut m_sinrs = Vec::with_capacity(channels.k());
    let mut e_sinrs = Vec::with_capacity(channels.k() - 1);
    let mut b_sinr = 0.0;
    for k in 0..channels.k() {
        let h = channels.channel(k);
        let eps = channels.radius(k);
        let norm = norm_sq(h).sqrt();
        let mut min_m = f64::INFINITY;
        let mut min_c = f64::INFINITY;
        let mut max_c = f64::NEG_INFINITY;
        let mut probe = |e: &[Complex64]| {
            let (m, c) = sinrs_for_channel(triple, &add_vec(h, e));
            min_m = min_m.min(m);
            min_c = min_c.min(c);
            max_c = max_c.max(c);
        };
        probe(&vec![Complex64::ZERO; dim]);
        if eps > 0.0 {
            let radial: Vec<Complex64> = h.iter().map(|z| z * (eps / norm)).collect();
            let neg: Vec<Complex64> = radial.iter().map(|z| -z).collect();
            probe(&radial);
            probe(&neg);
            for _ in 0..n_samples {
                let e = sample_ball(&mut rng, dim, eps);
                probe(&e);
            }
        }
        m_sinrs.push(min_m);
        if k == 0 {
            b_sinr = min_c;
        } else {
            e_sinrs.push(max_c);
        }
    }
    assemble(m_sinrs, b_sinr, e_sinrs)
}

/// Real symmetric embedding of a Hermitian quadratic form on row vectors:
/// `h M h^H = x^T E x` with `x = [Re h; -Im h]`.
fn embed_row_form(m: &HermitianMatrix) -> DMatrix<f64> {
    embed_hermitian(m)
}

fn row_form_coords(h: &[Complex64]) -> DVector<f64> {
    let n = h.len();
    DVector::from_fn(2 * n, |i, _| if i < n { h[i].re } else { -h[i - n].im })
}

/// Global minimum of `x^T A x + 2 w^T x` over the ball `||x|| <= radius`
/// (trust-region subproblem), solved exactly via the secular equation.
fn trs_min(a: &DMatrix<f64>, w: &DVector<f64>, radius: f64) -> f64 {
    if radius <= 0.0 {
        return 0.0;
    }
    let eig = SymmetricEigen::new(a.clone());
    let lam: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    let wt = eig.eigenvectors.transpose() * w;
    let lmin = lam.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = lam
        .iter()
        .map(|l| l.abs())
        .fold(w.norm() / radius, f64::max)
        .max(1e-30);
    let r2 = radius * radius;

    let norm2_at = |shift: f64| -> f64 {
        lam.iter()
            .zip(wt.iter())
            .map(|(&l, &c)| {
                let d = l + shift;
                c * c / (d * d)
            })
            .sum()
    };
    let value_at = |shift: f64| -> f64 {
        lam.iter()
            .zip(wt.iter())
            .map(|(&l, &c)| {
                let d = l + shift;
                let x = -c / d;
                l * x * x + 2.0 * c * x
            })
            .sum()
    };

    // Interior solution when A is positive definite and the stationary point
    // fits inside the ball.
    if lmin > 0.0 && norm2_at(0.0) <= r2 {
        return value_at(0.0);
    }

    let edge_tol = 1e-10 * scale;
    if lmin <= 0.0 {
        let rho2: f64 = lam
            .iter()
            .zip(wt.iter())
            .filter(|(&l, _)| l <= lmin + edge_tol)
            .map(|(_, &c)| c * c)
            .sum();
        if rho2.sqrt() <= 1e-9 * scale * radius {
            // Hard case: no component along the bottom eigenspace. Fill the
            // remaining radius along a bottom eigenvector.
            let l2: f64 = lam
                .iter()
                .zip(wt.iter())
                .filter(|(&l, _)| l > lmin + edge_tol)
                .map(|(&l, &c)| {
                    let d = l - lmin;
                    c * c / (d * d)
                })
                .sum();
            if l2 <= r2 {
                let base: f64 = lam
                    .iter()
                    .zip(wt.iter())
                    .filter(|(&l, _)| l > lmin + edge_tol)
                    .map(|(&l, &c)| {
                        let x = -c / (l - lmin);
                        l * x * x + 2.0 * c * x
                    })
                    .sum();
                return base + lmin * (r2 - l2);
            }
        }
    }

    // Boundary solution: find shift > max(0, -lmin) with ||x(shift)|| = radius.
    let base = (-lmin).max(0.0);
    let mut delta = 1e-12 * (scale + base);
    let mut lo = base + delta;
    for _ in 0..80 {
        if norm2_at(lo) >= r2 || delta < 1e-280 {
            break;
        }
        delta /= 16.0;
        lo = base + delta;
    }
    if norm2_at(lo) < r2 {
        // Numerically at the hard-case boundary; the bracket degenerates.
        return value_at(lo) + lmin.min(0.0) * (r2 - norm2_at(lo)).max(0.0);
    }
    let mut hi = base + scale.max(delta);
    for _ in 0..200 {
        if norm2_at(hi) < r2 {
            break;
        }
        hi = base + (hi - base) * 4.0;
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if norm2_at(mid) > r2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    value_at(0.5 * (lo + hi))
}

/// Exact minimum of `(h+e) M (h+e)^H + c` over `||e|| <= eps`.
pub fn ball_quadratic_min(m: &HermitianMatrix, h: &[Complex64], eps: f64, c: f64) -> f64 {
    let center = m.quad_form(h) + c;
    if eps <= 0.0 {
        return center;
    }
    let a = embed_row_form(m);
    // Linear coefficient: 2 Re(h M e^H) = 2 w^T x with w from the row g = h M.
    let n = h.len();
    let mut g = vec![Complex64::ZERO; n];
    for j in 0..n {
        let mut acc = Complex64::ZERO;
        for i in 0..n {
            acc += h[i] * m.get(i, j);
        }
        g[j] = acc;
    }
    let w = row_form_coords(&g);
    center + trs_min(&a, &w, eps)
}

/// Exact maximum of `(h+e) M (h+e)^H + c` over `||e|| <= eps`.
pub fn ball_quadratic_max(m: &HermitianMatrix, h: &[Complex64], eps: f64, c: f64) -> f64 {
    -ball_quadratic_min(&m.scaled(-1.0), h, eps, -c)
}

/// Exact minimum over the ball of `(h N h^H + an) / (h D h^H + ad)`, for a
/// denominator that stays positive on the ball.
fn ball_ratio_min(
    num: &HermitianMatrix,
    an: f64,
    den: &HermitianMatrix,
    ad: f64,
    h: &[Complex64],
    eps: f64,
) -> f64 {
    let num_max = ball_quadratic_max(num, h, eps, an);
    let den_min = ball_quadratic_min(den, h, eps, ad);
    assert!(den_min > 0.0, "denominator not positive over the ball");
    let mut lo = 0.0f64;
    let mut hi = num_max / den_min + 1.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let shifted = num.add_scaled(-mid, den);
        if ball_quadratic_min(&shifted, h, eps, an - mid * ad) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Exact maximum over the ball of the same ratio.
fn ball_ratio_max(
    num: &HermitianMatrix,
    an: f64,
    den: &HermitianMatrix,
    ad: f64,
    h: &[Complex64],
    eps: f64,
) -> f64 {
    let num_max = ball_quadratic_max(num, h, eps, an);
    let den_min = ball_quadratic_min(den, h, eps, ad);
    assert!(den_min > 0.0, "denominator not positive over the ball");
    let mut lo = 0.0f64;
    let mut hi = num_max / den_min + 1.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let shifted = den.scaled(mid).add_scaled(-1.0, num);
        if ball_quadratic_min(&shifted, h, eps, mid * ad - an) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Exact worst-case rates over the uncertainty balls.
///
/// Same contract as [`worst_case_eval`] but computed by bisection over rate
/// levels with trust-region subproblems instead of sampling, so the result
/// carries no sampling error.
pub fn exact_worst_case(triple: &CovarianceTriple, channels: &ChannelSet) -> RateBreakdown {
    let interference = triple.qc.add_scaled(1.0, &triple.qa);
    let mut m_sinrs = Vec::with_capacity(channels.k());
    let mut e_sinrs = Vec::with_capacity(channels.k() - 1);
    let mut b_sinr = 0.0;
    for k in 0..channels.k() {
        let h = channels.channel(k);
        let eps = channels.radius(k);
        m_sinrs.push(ball_ratio_min(&triple.q0, 0.0, &interference, 1.0, h, eps));
        // 1 + qc/(1+qa) = (1 + qc + qa)/(1 + qa); track the SINR form.
        if k == 0 {
            b_sinr = ball_ratio_min(&interference, 1.0, &triple.qa, 1.0, h, eps) - 1.0;
        } else {
            e_sinrs.push(ball_ratio_max(&interference, 1.0, &triple.qa, 1.0, h, eps) - 1.0);
        }
    }
    // Ratio bisection can land a hair under the exact value; SINRs are
    // nonnegative by construction.
    let b = b_sinr.max(0.0);
    let e: Vec<f64> = e_sinrs.into_iter().map(|s| s.max(0.0)).collect();
    assemble(m_sinrs, b, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn two_user_set() -> ChannelSet {
        ChannelSet::perfect(
            2,
            vec![vec![c(1.0, 0.5), c(-0.3, 0.2)], vec![c(0.4, -1.1), c(0.9, 0.0)]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_single_receiver() {
        let r = ChannelSet::perfect(2, vec![vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        assert!(matches!(r, Err(AnError::Validation(_))));
    }

    #[test]
    fn rejects_radius_reaching_zero_channel() {
        let r = ChannelSet::new(
            1,
            vec![vec![c(1.0, 0.0)], vec![c(0.5, 0.0)]],
            vec![0.2, 0.5],
        );
        assert!(matches!(r, Err(AnError::Validation(_))));
    }

    #[test]
    fn rejects_bisection_tol_out_of_range() {
        let cs = two_user_set();
        let r = SystemConfig::new(cs, 10.0, 0.05, 0.5, 11);
        assert!(matches!(r, Err(AnError::Validation(_))));
    }

    #[test]
    fn db_conversion_round_numbers() {
        assert_relative_eq!(db_to_linear(20.0), 100.0, max_relative = 1e-12);
        assert_relative_eq!(db_to_linear(0.0), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn default_tol_stays_inside_admissible_range() {
        for eps in [0.01, 0.05, 0.1, 0.3, 1.0] {
            let tol = default_bisection_tol(eps);
            assert!(tol > 0.0);
            assert!(tol < 1.0 - (-eps).exp2());
        }
    }

    #[test]
    fn isotropic_multicast_rates_match_closed_form() {
        let cs = two_user_set();
        let p = 10.0;
        let triple = CovarianceTriple {
            q0: HermitianMatrix::scaled_identity(2, p / 2.0),
            qc: HermitianMatrix::zeros(2),
            qa: HermitianMatrix::zeros(2),
        };
        let r = rates(&triple, &cs);
        for k in 0..2 {
            let expect = (1.0 + p / 2.0 * cs.norm_sq(k)).log2();
            assert_relative_eq!(r.multicast_per_rx[k], expect, max_relative = 1e-12);
        }
        assert_eq!(r.secrecy_rate, 0.0);
        assert_eq!(r.legit_rate, 0.0);
    }

    #[test]
    fn beamformed_confidential_rate_matches_closed_form() {
        // Second receiver orthogonal to the first: leakage is exactly zero.
        let cs = ChannelSet::perfect(
            2,
            vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]],
        )
        .unwrap();
        let p = 5.0;
        let h1 = cs.channel(0).to_vec();
        let qc = HermitianMatrix::outer(&h1).scaled(p / cs.norm_sq(0));
        let triple = CovarianceTriple {
            q0: HermitianMatrix::zeros(2),
            qc,
            qa: HermitianMatrix::zeros(2),
        };
        let r = rates(&triple, &cs);
        assert_relative_eq!(
            r.legit_rate,
            (1.0 + p * cs.norm_sq(0)).log2(),
            max_relative = 1e-12
        );
        assert!(r.eaves_per_rx[0].abs() < 1e-12);
        assert_relative_eq!(r.secrecy_rate, r.legit_rate, max_relative = 1e-12);
    }

    #[test]
    fn ball_extremes_matches_hand_values() {
        let h = vec![c(3.0, 0.0), c(0.0, 4.0)];
        let (lo, hi) = ball_extremes(&h, 1.0).unwrap();
        assert_relative_eq!(lo, 16.0, max_relative = 1e-12);
        assert_relative_eq!(hi, 36.0, max_relative = 1e-12);
        assert!(ball_extremes(&h, 5.0).is_err());
    }

    #[test]
    fn zero_radius_worst_case_equals_center_rates() {
        let cs = two_user_set();
        let triple = CovarianceTriple {
            q0: HermitianMatrix::scaled_identity(2, 1.0),
            qc: HermitianMatrix::outer(cs.channel(0)).scaled(0.5),
            qa: HermitianMatrix::scaled_identity(2, 0.25),
        };
        let center = rates(&triple, &cs);
        let wc = worst_case_eval(&triple, &cs, 500, 7);
        assert_relative_eq!(wc.multicast_rate, center.multicast_rate, max_relative = 1e-12);
        assert_relative_eq!(wc.secrecy_rate, center.secrecy_rate, max_relative = 1e-12);
        let exact = exact_worst_case(&triple, &cs);
        assert_relative_eq!(exact.multicast_rate, center.multicast_rate, epsilon = 1e-9);
        assert_relative_eq!(exact.secrecy_rate, center.secrecy_rate, epsilon = 1e-9);
    }

    #[test]
    fn trs_hard_case_matches_grid_search() {
        // Indefinite form with no linear component along the bottom
        // eigenvector; the minimizer must still use the full radius.
        let a = DMatrix::<f64>::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]);
        let w = DVector::from_column_slice(&[0.0, 0.1]);
        let radius = 0.5;
        let exact = trs_min(&a, &w, radius);
        let mut best = f64::INFINITY;
        let steps = 1200;
        for i in 0..=steps {
            for j in 0..=steps {
                let x = -radius + 2.0 * radius * (i as f64) / steps as f64;
                let y = -radius + 2.0 * radius * (j as f64) / steps as f64;
                if x * x + y * y <= radius * radius {
                    let v = -x * x + y * y + 2.0 * 0.1 * y;
                    best = best.min(v);
                }
            }
        }
        assert!(exact <= best + 1e-9);
        assert!(best - exact < 5e-3);
    }

    #[test]
    fn trs_pure_quadratic_uses_bottom_eigenvalue() {
        let a = DMatrix::<f64>::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -3.0]);
        let w = DVector::zeros(2);
        assert_relative_eq!(trs_min(&a, &w, 2.0), -12.0, max_relative = 1e-10);
    }
}
