//! Secrecy-rate regions for an artificial-noise-aided multicast downlink that
//! embeds a confidential unicast service.
//!
//! A transmitter with `n_tx` antennas serves `K` single-antenna receivers with
//! a common multicast stream while simultaneously sending a confidential
//! stream to receiver 1. The other `K - 1` receivers are honest subscribers of
//! the multicast service but must learn nothing about the confidential
//! stream, so the transmitter treats them as eavesdroppers on that stream and
//! may spend part of its power on artificial noise to mask it.
//!
//! The crate computes the boundary of the achievable (multicast rate, secrecy
//! rate) region by maximizing the secrecy rate subject to a quality of
//! multicast service (QoMS) floor, for both perfectly known channels
//! ([`perfect_region`]) and channels known only up to a deterministic spherical
//! uncertainty set ([`robust_region`]). Lower-complexity baselines live in
//! [`suboptimal`]. All optimization reduces to semidefinite programs solved by
//! the companion [`sdp`] crate.
//!
//! Conventions used throughout: channels are row vectors, `h Q h^H` denotes a
//! real quadratic form with a Hermitian `Q`, noise power is normalized to one,
//! rates are in bits (base-2 logarithms), and receiver 1 is always the
//! confidential receiver.

pub mod model;
pub mod perfect_region;
pub mod robust_region;
pub mod suboptimal;

use model::CovarianceTriple;
use thiserror::Error;

/// Errors surfaced by region computations.
#[derive(Debug, Error)]
pub enum AnError {
    /// Input validation failed (dimensions, ranges, parameter coupling).
    #[error("invalid input: {0}")]
    Validation(String),
    /// The QoMS floor cannot be met by any admissible design.
    #[error("QoMS target infeasible: {0}")]
    Infeasible(String),
    /// The underlying SDP solver failed to reach an acceptable iterate.
    #[error("solver failure: {0}")]
    Solver(String),
}

/// Eigenvalue ratio below which a covariance counts as numerically rank one.
pub const RANK_ONE_RATIO: f64 = 1e-6;

/// Spectral diagnostics and bookkeeping attached to each boundary point.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    /// Second-largest over largest eigenvalue of `Qc` (0 for a zero matrix).
    pub rank_ratio_qc: f64,
    /// Second-largest over largest eigenvalue of `Q0`.
    pub rank_ratio_q0: f64,
    /// Second-largest over largest eigenvalue of `Qa`.
    pub rank_ratio_qa: f64,
    /// Achieved multicast rate minus the QoMS target (worst case when the
    /// channel set carries uncertainty). Slightly negative values down to the
    /// solver tolerance are expected.
    pub qoms_slack: f64,
    /// Number of SDP solves spent on this point.
    pub solver_calls: usize,
}

/// One point on a region boundary: the QoMS target and the best secrecy rate
/// compatible with it, together with the transmit design that attains it.
#[derive(Debug, Clone)]
pub struct RatePoint {
    /// Multicast rate target in bits.
    pub tau_ms: f64,
    /// SINR form of the target, `2^tau_ms - 1`.
    pub tau_prime: f64,
    /// Maximal secrecy rate in bits, clamped to zero.
    pub secrecy_rate: f64,
    /// Achieved multicast rate (worst case under uncertainty); equals
    /// `tau_ms + diagnostics.qoms_slack`.
    pub multicast_rate: f64,
    /// Covariances attaining the point.
    pub triple: CovarianceTriple,
    pub diagnostics: Diagnostics,
}

/// A point of the sweep grid that could not be computed.
#[derive(Debug, Clone)]
pub struct PointFailure {
    pub tau_ms: f64,
    pub reason: String,
}

/// Identifies which design scheme produced a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Joint optimization with artificial noise, perfect channel knowledge.
    Optimal,
    /// Joint optimization with artificial noise, worst case over uncertainty.
    Robust,
    /// Fixed power split between multicast and confidential streams.
    PowerSplit,
    /// Certified robust lower bound from a single-shot restriction.
    LowerBound,
    /// Artificial noise disabled.
    NoArtificialNoise,
    /// Time sharing between multicast-only and secrecy-only operation.
    Tdma,
    /// Perfect-knowledge design evaluated on its worst-case channels.
    NonRobust,
}

impl Scheme {
    /// Stable lowercase identifier used in file names and reports.
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Optimal => "optimal",
            Scheme::Robust => "robust",
            Scheme::PowerSplit => "power-split",
            Scheme::LowerBound => "lower-bound",
            Scheme::NoArtificialNoise => "no-an",
            Scheme::Tdma => "tdma",
            Scheme::NonRobust => "nonrobust",
        }
    }
}

/// Result of sweeping one scheme across the QoMS grid.
#[derive(Debug, Clone)]
pub struct RegionResult {
    pub scheme: Scheme,
    /// Successfully computed points, sorted by strictly increasing `tau_ms`.
    pub points: Vec<RatePoint>,
    /// Grid points that failed, with reasons; the sweep continues past them.
    pub failures: Vec<PointFailure>,
    /// Maximal feasible QoMS target (worst case under uncertainty).
    pub tau_max: f64,
    /// Total SDP solves across the sweep.
    pub total_solver_calls: usize,
}

impl RegionResult {
    /// Asserts the ordering invariant on `points`.
    ///
    /// # Panics
    /// Panics if `tau_ms` values are not strictly increasing.
    pub fn assert_sorted(&self) {
        for pair in self.points.windows(2) {
            assert!(
                pair[0].tau_ms < pair[1].tau_ms,
                "region points out of order: {} then {}",
                pair[0].tau_ms,
                pair[1].tau_ms
            );
        }
    }
}
