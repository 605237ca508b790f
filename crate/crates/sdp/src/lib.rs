//! Small dense semidefinite programming solver with complex Hermitian
//! variables.
//!
//! The crate targets problems with a handful of low-dimensional matrix
//! variables and block LMI constraints, the shape that arises in downlink
//! beamforming and robust covariance design. Problems are stated directly
//! over complex Hermitian variables; the solver embeds each block into real
//! symmetric form and runs a homogeneous self-dual interior-point method, so
//! infeasible and unbounded instances are detected by certificate rather
//! than by divergence.
//!
//! # Example
//!
//! Maximize `Tr(C Q)` over PSD `Q` with `Tr(Q) <= 1`; the optimum is the
//! largest eigenvalue of `C`.
//!
//! ```
//! use nalgebra::DMatrix;
//! use num_complex::Complex64;
//! use sdp::{HermitianMatrix, LinExpr, SdpProblem, SolveSettings};
//!
//! let z = Complex64::new;
//! let c = HermitianMatrix::new(DMatrix::from_row_slice(
//!     2,
//!     2,
//!     &[z(1.0, 0.0), z(0.0, -0.5), z(0.0, 0.5), z(2.0, 0.0)],
//! ));
//! let mut p = SdpProblem::new();
//! let q = p.hermitian_var(2);
//! p.add_ineq_ge(
//!     LinExpr::constant(1.0).plus_trace(HermitianMatrix::scaled_identity(2, -1.0), q),
//! );
//! p.set_objective(LinExpr::zero().plus_trace(c.clone(), q));
//! let sol = sdp::solve(&p, &SolveSettings::default());
//! let lam_max = c.eigenvalues().last().copied().unwrap();
//! assert!((sol.objective.unwrap() - lam_max).abs() < 1e-6);
//! ```

mod herm;
mod ipm;
mod problem;

pub use herm::{embed_hermitian, extract_hermitian, HermitianMatrix};
pub use ipm::{SdpSolution, SolveSettings, SolveStatus};
pub use problem::{LinExpr, LmiExpr, SdpProblem, VarId};

use nalgebra::DVector;

/// Solves a problem. Pure: identical inputs produce identical outputs.
pub fn solve(problem: &SdpProblem, settings: &SolveSettings) -> SdpSolution {
    match problem.compile() {
        problem::Compiled::Run(compiled) => ipm::solve_compiled(&compiled, settings),
        problem::Compiled::Resolved(outcome) => match outcome {
            problem::ResolvedOutcome::Infeasible => {
                SdpSolution::bare(SolveStatus::Infeasible, 0)
            }
            problem::ResolvedOutcome::Unbounded => {
                SdpSolution::bare(SolveStatus::Unbounded, 0)
            }
            problem::ResolvedOutcome::Pinned { q, objective } => pinned_solution(problem, q, objective),
        },
    }
}

fn pinned_solution(problem: &SdpProblem, q: DVector<f64>, objective: f64) -> SdpSolution {
    let mut offsets = Vec::with_capacity(problem.vars.len());
    let mut total = 0usize;
    for v in &problem.vars {
        offsets.push(total);
        total += match v {
            problem::VarKind::HermitianPsd { dim } => dim * dim,
            _ => 1,
        };
    }
    SdpSolution {
        status: SolveStatus::Optimal,
        objective: Some(objective),
        duality_gap: Some(0.0),
        iterations: 0,
        values: Some(ipm::RecoveredValues {
            q,
            offsets,
            kinds: problem.vars.clone(),
        }),
    }
}
