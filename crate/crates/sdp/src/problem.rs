//! Problem construction and compilation to a block conic form.
//!
//! A problem is a set of complex Hermitian and scalar variables, linear
//! equalities and inequalities over real-valued affine functionals of those
//! variables, and linear matrix inequalities. Compilation flattens every
//! Hermitian variable into real coordinates (diagonal entries, then real and
//! imaginary parts of each strictly upper entry), eliminates equalities
//! through an orthonormal nullspace parametrization, and embeds each complex
//! LMI block as a real symmetric block of twice the dimension.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::herm::{embed_hermitian, HermitianMatrix};

/// Handle to a variable of an [`SdpProblem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VarKind {
    /// Complex Hermitian matrix variable constrained to the PSD cone.
    HermitianPsd { dim: usize },
    /// Scalar variable constrained to be nonnegative.
    ScalarNonneg,
    /// Unconstrained scalar variable.
    ScalarFree,
}

impl VarKind {
    fn coord_count(self) -> usize {
        match self {
            VarKind::HermitianPsd { dim } => dim * dim,
            VarKind::ScalarNonneg | VarKind::ScalarFree => 1,
        }
    }
}

/// Real-valued affine expression in the problem variables.
///
/// Hermitian variables enter through trace pairings `Tr(H * Q)` with a fixed
/// Hermitian coefficient `H`; scalar variables through ordinary products.
#[derive(Debug, Clone, Default)]
pub struct LinExpr {
    pub(crate) constant: f64,
    pub(crate) trace_terms: Vec<(VarId, HermitianMatrix)>,
    pub(crate) scalar_terms: Vec<(VarId, f64)>,
}

impl LinExpr {
    /// Expression equal to the constant `c`.
    pub fn constant(c: f64) -> Self {
        LinExpr {
            constant: c,
            trace_terms: Vec::new(),
            scalar_terms: Vec::new(),
        }
    }

    /// Zero expression.
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Adds `Tr(h * Q)` where `Q` is the Hermitian variable `var`.
    pub fn plus_trace(mut self, h: HermitianMatrix, var: VarId) -> Self {
        self.trace_terms.push((var, h));
        self
    }

    /// Adds the quadratic form `h Q h^H` for a row vector `h`.
    pub fn plus_quad(self, h: &[Complex64], var: VarId) -> Self {
        self.plus_trace(HermitianMatrix::outer(h), var)
    }

    /// Adds `coeff * s` where `s` is the scalar variable `var`.
    pub fn plus_scalar(mut self, coeff: f64, var: VarId) -> Self {
        self.scalar_terms.push((var, coeff));
        self
    }
}

/// One additive term of a linear matrix inequality.
#[derive(Debug, Clone)]
pub(crate) enum LmiTerm {
    /// `scale * L Q L^H` for a Hermitian variable `Q`; `l = None` means the
    /// identity congruence, requiring matching dimensions.
    Congruence {
        var: VarId,
        scale: f64,
        l: Option<DMatrix<Complex64>>,
    },
    /// `s * D` for a scalar variable `s` and fixed Hermitian `D`.
    Scalar { var: VarId, d: HermitianMatrix },
}

/// Matrix-valued affine expression constrained to be positive semidefinite.
#[derive(Debug, Clone)]
pub struct LmiExpr {
    pub(crate) dim: usize,
    pub(crate) constant: HermitianMatrix,
    pub(crate) terms: Vec<LmiTerm>,
}

impl LmiExpr {
    /// Starts an LMI of the given dimension with constant term `constant`.
    ///
    /// # Panics
    ///
    /// Panics if the constant's dimension differs from `dim`.
    pub fn new(dim: usize, constant: HermitianMatrix) -> Self {
        assert_eq!(constant.dim(), dim, "LMI constant dimension mismatch");
        LmiExpr {
            dim,
            constant,
            terms: Vec::new(),
        }
    }

    /// Adds `scale * L Q L^H`, or `scale * Q` when `l` is `None`.
    pub fn push_congruence(
        &mut self,
        var: VarId,
        scale: f64,
        l: Option<DMatrix<Complex64>>,
    ) -> &mut Self {
        if let Some(ref l) = l {
            assert_eq!(l.nrows(), self.dim, "congruence output dimension mismatch");
        }
        self.terms.push(LmiTerm::Congruence { var, scale, l });
        self
    }

    /// Adds `s * d` for a scalar variable.
    pub fn push_scalar(&mut self, var: VarId, d: HermitianMatrix) -> &mut Self {
        assert_eq!(d.dim(), self.dim, "scalar coefficient dimension mismatch");
        self.terms.push(LmiTerm::Scalar { var, d });
        self
    }
}

/// Semidefinite program over complex Hermitian and scalar variables.
///
/// The objective is always maximized. Hermitian variables are implicitly
/// constrained to the PSD cone and nonnegative scalars to the half-line;
/// everything else is expressed through [`LinExpr`] equalities and
/// inequalities and [`LmiExpr`] blocks.
#[derive(Debug, Clone, Default)]
pub struct SdpProblem {
    pub(crate) vars: Vec<VarKind>,
    pub(crate) equalities: Vec<LinExpr>,
    pub(crate) inequalities: Vec<LinExpr>,
    pub(crate) lmis: Vec<LmiExpr>,
    pub(crate) objective: LinExpr,
}

impl SdpProblem {
    /// Empty problem with zero objective.
    pub fn new() -> Self {
        SdpProblem {
            vars: Vec::new(),
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lmis: Vec::new(),
            objective: LinExpr::zero(),
        }
    }

    /// Declares a complex Hermitian PSD matrix variable of the given dimension.
    pub fn hermitian_var(&mut self, dim: usize) -> VarId {
        assert!(dim >= 1, "variable dimension must be positive");
        self.vars.push(VarKind::HermitianPsd { dim });
        VarId(self.vars.len() - 1)
    }

    /// Declares a nonnegative scalar variable.
    pub fn scalar_var(&mut self) -> VarId {
        self.vars.push(VarKind::ScalarNonneg);
        VarId(self.vars.len() - 1)
    }

    /// Declares an unconstrained scalar variable.
    pub fn free_var(&mut self) -> VarId {
        self.vars.push(VarKind::ScalarFree);
        VarId(self.vars.len() - 1)
    }

    /// Constrains `expr == 0`.
    pub fn add_eq(&mut self, expr: LinExpr) {
        self.equalities.push(expr);
    }

    /// Constrains `expr >= 0`.
    pub fn add_ineq_ge(&mut self, expr: LinExpr) {
        self.inequalities.push(expr);
    }

    /// Constrains the matrix expression to be positive semidefinite.
    pub fn add_lmi(&mut self, lmi: LmiExpr) {
        self.lmis.push(lmi);
    }

    /// Sets the expression to maximize.
    pub fn set_objective(&mut self, expr: LinExpr) {
        self.objective = expr;
    }

    fn var_dim(&self, var: VarId) -> usize {
        match self.vars[var.0] {
            VarKind::HermitianPsd { dim } => dim,
            _ => 1,
        }
    }

    fn coord_offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.vars.len());
        let mut total = 0;
        for v in &self.vars {
            offsets.push(total);
            total += v.coord_count();
        }
        (offsets, total)
    }

    /// Writes the coordinate expansion of a [`LinExpr`] into `row` and
    /// returns the constant term.
    fn expand_lin(&self, offsets: &[usize], expr: &LinExpr, row: &mut DVector<f64>) -> f64 {
        for (var, h) in &expr.trace_terms {
            let dim = self.var_dim(*var);
            assert!(
                matches!(self.vars[var.0], VarKind::HermitianPsd { .. }),
                "trace term on a scalar variable"
            );
            assert_eq!(h.dim(), dim, "trace coefficient dimension mismatch");
            let base = offsets[var.0];
            for (idx, coord) in herm_coords(dim).enumerate() {
                row[base + idx] += coord.trace_coeff(h);
            }
        }
        for (var, c) in &expr.scalar_terms {
            assert!(
                !matches!(self.vars[var.0], VarKind::HermitianPsd { .. }),
                "scalar term on a matrix variable"
            );
            row[offsets[var.0]] += *c;
        }
        expr.constant
    }

    /// Compiles to the internal conic form, or resolves trivially.
    pub(crate) fn compile(&self) -> Compiled {
        let (offsets, m_full) = self.coord_offsets();
        let mut blocks: Vec<Block> = Vec::new();

        // Cone membership of the variables themselves.
        for (vi, kind) in self.vars.iter().enumerate() {
            match kind {
                VarKind::HermitianPsd { dim } => {
                    let mut terms = Vec::new();
                    for (idx, coord) in herm_coords(*dim).enumerate() {
                        terms.push((offsets[vi] + idx, embed_hermitian(&coord.basis(*dim))));
                    }
                    blocks.push(Block {
                        dim: 2 * dim,
                        c: DMatrix::zeros(2 * dim, 2 * dim),
                        terms,
                    });
                }
                VarKind::ScalarNonneg => {
                    blocks.push(Block {
                        dim: 1,
                        c: DMatrix::zeros(1, 1),
                        terms: vec![(offsets[vi], DMatrix::from_element(1, 1, 1.0))],
                    });
                }
                VarKind::ScalarFree => {}
            }
        }

        // Scalar inequalities become one-dimensional blocks.
        for ineq in &self.inequalities {
            let mut row = DVector::zeros(m_full);
            let constant = self.expand_lin(&offsets, ineq, &mut row);
            let mut terms = Vec::new();
            for r in 0..m_full {
                if row[r] != 0.0 {
                    terms.push((r, DMatrix::from_element(1, 1, row[r])));
                }
            }
            blocks.push(Block {
                dim: 1,
                c: DMatrix::from_element(1, 1, constant),
                terms,
            });
        }

        // Matrix inequalities, embedded over the reals.
        for lmi in &self.lmis {
            let edim = 2 * lmi.dim;
            let mut coeff: Vec<(usize, HermitianMatrix)> = Vec::new();
            let push = |r: usize, h: HermitianMatrix, acc: &mut Vec<(usize, HermitianMatrix)>| {
                if let Some(entry) = acc.iter_mut().find(|(idx, _)| *idx == r) {
                    entry.1 = entry.1.add_scaled(1.0, &h);
                } else {
                    acc.push((r, h));
                }
            };
            for term in &lmi.terms {
                match term {
                    LmiTerm::Congruence { var, scale, l } => {
                        let vdim = self.var_dim(*var);
                        assert!(
                            matches!(self.vars[var.0], VarKind::HermitianPsd { .. }),
                            "congruence term on a scalar variable"
                        );
                        if let Some(l) = l {
                            assert_eq!(l.ncols(), vdim, "congruence input dimension mismatch");
                        } else {
                            assert_eq!(vdim, lmi.dim, "identity congruence dimension mismatch");
                        }
                        let base = offsets[var.0];
                        for (idx, coord) in herm_coords(vdim).enumerate() {
                            let contrib = match l {
                                Some(l) => coord.congruence(l).scaled(*scale),
                                None => coord.basis(vdim).scaled(*scale),
                            };
                            push(base + idx, contrib, &mut coeff);
                        }
                    }
                    LmiTerm::Scalar { var, d } => {
                        assert!(
                            !matches!(self.vars[var.0], VarKind::HermitianPsd { .. }),
                            "matrix coefficient on a matrix variable"
                        );
                        push(offsets[var.0], d.clone(), &mut coeff);
                    }
                }
            }
            let terms = coeff
                .into_iter()
                .map(|(r, h)| (r, embed_hermitian(&h)))
                .collect();
            blocks.push(Block {
                dim: edim,
                c: embed_hermitian(&lmi.constant),
                terms,
            });
        }

        // Objective over full coordinates.
        let mut f_full = DVector::zeros(m_full);
        let obj_const = self.expand_lin(&offsets, &self.objective, &mut f_full);

        // Equality system E q = g.
        let n_eq = self.equalities.len();
        let mut e = DMatrix::zeros(n_eq, m_full);
        let mut g = DVector::zeros(n_eq);
        for (k, eq) in self.equalities.iter().enumerate() {
            let mut row = DVector::zeros(m_full);
            let constant = self.expand_lin(&offsets, eq, &mut row);
            e.row_mut(k).copy_from(&row.transpose());
            g[k] = -constant;
        }

        let (q0, nmap) = match eliminate_equalities(&e, &g) {
            Ok(pair) => pair,
            Err(()) => {
                return Compiled::Resolved(ResolvedOutcome::Infeasible);
            }
        };

        // Drop reduced coordinates that no cone block can see. A leftover
        // objective component along such a coordinate is an unbounded ray.
        let mut used = vec![false; m_full];
        for b in &blocks {
            for (r, _) in &b.terms {
                used[*r] = true;
            }
        }
        let f_red_full = nmap.transpose() * &f_full;
        let mut keep = Vec::new();
        for z in 0..nmap.ncols() {
            let col_used = (0..m_full).any(|r| used[r] && nmap[(r, z)].abs() > 1e-12);
            if col_used {
                keep.push(z);
            } else if f_red_full[z].abs() > 1e-9 {
                return Compiled::Resolved(ResolvedOutcome::Unbounded);
            }
        }
        let nmap = nmap.select_columns(keep.iter());
        let f = DVector::from_iterator(keep.len(), keep.iter().map(|&z| f_red_full[z]));

        // Fold the particular solution into the block constants.
        for b in &mut blocks {
            for (r, fmat) in &b.terms {
                if q0[*r] != 0.0 {
                    b.c += fmat * q0[*r];
                }
            }
        }

        if keep.is_empty() {
            // Everything is pinned; only feasibility of the constants remains.
            let feasible = blocks.iter().all(|b| {
                b.c.clone().symmetric_eigenvalues().iter().all(|&ev| ev >= -1e-9)
            });
            let objective = obj_const + f_full.dot(&q0);
            return Compiled::Resolved(if feasible {
                ResolvedOutcome::Pinned { q: q0, objective }
            } else {
                ResolvedOutcome::Infeasible
            });
        }

        Compiled::Run(CompiledProblem {
            m_full,
            f,
            obj_offset: obj_const + f_full.dot(&q0),
            q0,
            nmap,
            blocks,
            offsets,
            kinds: self.vars.clone(),
        })
    }
}

/// Equality elimination: parametrize `{q : E q = g}` as `q = q0 + N z` with
/// orthonormal `N`. Returns `Err(())` when the system is inconsistent.
fn eliminate_equalities(
    e: &DMatrix<f64>,
    g: &DVector<f64>,
) -> Result<(DVector<f64>, DMatrix<f64>), ()> {
    let m = e.ncols();
    if e.nrows() == 0 {
        return Ok((DVector::zeros(m), DMatrix::identity(m, m)));
    }
    // Minimum-norm particular solution through the Gram matrix pseudoinverse.
    let gram = e * e.transpose();
    let eig = gram.clone().symmetric_eigen();
    let lam_max = eig.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b));
    let tol = lam_max.max(1.0) * 1e-12;
    let mut ginv_g = DVector::zeros(e.nrows());
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > tol {
            let v = eig.eigenvectors.column(k);
            ginv_g += v * (v.dot(g) / lam);
        }
    }
    let q0 = e.transpose() * &ginv_g;
    let resid = (e * &q0 - g).norm();
    if resid > 1e-8 * (1.0 + g.norm()) {
        return Err(());
    }
    // Nullspace of E from the spectral projector I - E^T pinv(G) E.
    let mut proj = DMatrix::identity(m, m);
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > tol {
            let w = e.transpose() * eig.eigenvectors.column(k);
            proj -= &w * w.transpose() / lam;
        }
    }
    let peig = proj.symmetric_eigen();
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for k in 0..m {
        if peig.eigenvalues[k] > 0.5 {
            cols.push(peig.eigenvectors.column(k).into_owned());
        }
    }
    let mut nmap = DMatrix::zeros(m, cols.len());
    for (k, c) in cols.iter().enumerate() {
        nmap.column_mut(k).copy_from(c);
    }
    Ok((q0, nmap))
}

/// A single real symmetric cone block `c + sum_r q_r F_r >= 0` in full
/// (pre-elimination) coordinates.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub dim: usize,
    pub c: DMatrix<f64>,
    pub terms: Vec<(usize, DMatrix<f64>)>,
}

/// Compiled conic problem: maximize `f . z` subject to every block being PSD
/// at `q = q0 + N z`.
#[derive(Debug, Clone)]
pub(crate) struct CompiledProblem {
    pub m_full: usize,
    pub f: DVector<f64>,
    pub obj_offset: f64,
    pub q0: DVector<f64>,
    pub nmap: DMatrix<f64>,
    pub blocks: Vec<Block>,
    pub offsets: Vec<usize>,
    pub kinds: Vec<VarKind>,
}

impl CompiledProblem {
    /// Number of reduced structural coordinates.
    pub fn m_red(&self) -> usize {
        self.nmap.ncols()
    }

    /// Maps a reduced point back to full variable coordinates.
    pub fn recover_q(&self, z: &DVector<f64>) -> DVector<f64> {
        &self.q0 + &self.nmap * z
    }
}

/// Outcome of compilation.
pub(crate) enum Compiled {
    Run(CompiledProblem),
    Resolved(ResolvedOutcome),
}

/// Problems fully resolved without iteration.
pub(crate) enum ResolvedOutcome {
    Infeasible,
    Unbounded,
    Pinned { q: DVector<f64>, objective: f64 },
}

/// Enumeration of the real coordinates of a Hermitian matrix: diagonal
/// entries first, then `(re, im)` pairs of the strictly upper triangle in
/// column-major order.
#[derive(Debug, Clone, Copy)]
pub(crate) enum HermCoord {
    Diag(usize),
    Re(usize, usize),
    Im(usize, usize),
}

pub(crate) fn herm_coords(dim: usize) -> impl Iterator<Item = HermCoord> {
    let diags = (0..dim).map(HermCoord::Diag);
    let uppers = (0..dim).flat_map(move |j| {
        (0..j).flat_map(move |i| [HermCoord::Re(i, j), HermCoord::Im(i, j)])
    });
    diags.chain(uppers)
}

impl HermCoord {
    /// Basis matrix of this coordinate.
    pub fn basis(self, dim: usize) -> HermitianMatrix {
        let mut m = DMatrix::zeros(dim, dim);
        match self {
            HermCoord::Diag(k) => m[(k, k)] = Complex64::new(1.0, 0.0),
            HermCoord::Re(i, j) => {
                m[(i, j)] = Complex64::new(1.0, 0.0);
                m[(j, i)] = Complex64::new(1.0, 0.0);
            }
            HermCoord::Im(i, j) => {
                m[(i, j)] = Complex64::new(0.0, 1.0);
                m[(j, i)] = Complex64::new(0.0, -1.0);
            }
        }
        HermitianMatrix::new(m)
    }

    /// `Tr(h * basis)` for a Hermitian coefficient `h`.
    pub fn trace_coeff(self, h: &HermitianMatrix) -> f64 {
        match self {
            HermCoord::Diag(k) => h.get(k, k).re,
            HermCoord::Re(i, j) => 2.0 * h.get(i, j).re,
            HermCoord::Im(i, j) => 2.0 * h.get(i, j).im,
        }
    }

    /// `L * basis * L^H` for a congruence by `l`.
    pub fn congruence(self, l: &DMatrix<Complex64>) -> HermitianMatrix {
        let col = |k: usize| l.column(k);
        let rank_one = |a: nalgebra::DVectorView<Complex64>,
                        b: nalgebra::DVectorView<Complex64>,
                        phase: Complex64| {
            let d = l.nrows();
            DMatrix::from_fn(d, d, |i, j| phase * a[i] * b[j].conj())
        };
        let m = match self {
            HermCoord::Diag(k) => rank_one(col(k), col(k), Complex64::new(1.0, 0.0)),
            HermCoord::Re(i, j) => {
                rank_one(col(i), col(j), Complex64::new(1.0, 0.0))
                    + rank_one(col(j), col(i), Complex64::new(1.0, 0.0))
            }
            HermCoord::Im(i, j) => {
                rank_one(col(i), col(j), Complex64::new(0.0, 1.0))
                    + rank_one(col(j), col(i), Complex64::new(0.0, -1.0))
            }
        };
        HermitianMatrix::new(m)
    }
}

/// Reconstructs a Hermitian matrix value from its coordinate slice.
pub(crate) fn coords_to_hermitian(dim: usize, coords: &[f64]) -> HermitianMatrix {
    let mut m = DMatrix::zeros(dim, dim);
    for (idx, coord) in herm_coords(dim).enumerate() {
        let v = coords[idx];
        match coord {
            HermCoord::Diag(k) => m[(k, k)] += Complex64::new(v, 0.0),
            HermCoord::Re(i, j) => {
                m[(i, j)] += Complex64::new(v, 0.0);
                m[(j, i)] += Complex64::new(v, 0.0);
            }
            HermCoord::Im(i, j) => {
                m[(i, j)] += Complex64::new(0.0, v);
                m[(j, i)] += Complex64::new(0.0, -v);
            }
        }
    }
    HermitianMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn coordinate_round_trip() {
        let z = Complex64::new;
        let q = HermitianMatrix::new(DMatrix::from_row_slice(
            3,
            3,
            &[
                z(1.0, 0.0),
                z(0.5, -0.25),
                z(0.0, 1.5),
                z(0.5, 0.25),
                z(2.0, 0.0),
                z(-1.0, 0.5),
                z(0.0, -1.5),
                z(-1.0, -0.5),
                z(3.0, 0.0),
            ],
        ));
        let coords: Vec<f64> = herm_coords(3)
            .map(|c| match c {
                HermCoord::Diag(k) => q.get(k, k).re,
                HermCoord::Re(i, j) => q.get(i, j).re,
                HermCoord::Im(i, j) => q.get(i, j).im,
            })
            .collect();
        let back = coords_to_hermitian(3, &coords);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(q.get(i, j).re, back.get(i, j).re, epsilon = 1e-14);
                assert_abs_diff_eq!(q.get(i, j).im, back.get(i, j).im, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn congruence_coefficients_match_direct_congruence() {
        let z = Complex64::new;
        let l = DMatrix::from_row_slice(
            3,
            2,
            &[
                z(1.0, 0.5),
                z(-0.25, 1.0),
                z(0.0, -1.0),
                z(2.0, 0.0),
                z(0.5, 0.5),
                z(1.0, -1.0),
            ],
        );
        let q = HermitianMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[z(2.0, 0.0), z(0.3, -0.7), z(0.3, 0.7), z(1.0, 0.0)],
        ));
        let direct = q.congruence(&l);
        let coords: Vec<f64> = herm_coords(2)
            .map(|c| match c {
                HermCoord::Diag(k) => q.get(k, k).re,
                HermCoord::Re(i, j) => q.get(i, j).re,
                HermCoord::Im(i, j) => q.get(i, j).im,
            })
            .collect();
        let mut acc = HermitianMatrix::zeros(3);
        for (idx, coord) in herm_coords(2).enumerate() {
            acc = acc.add_scaled(coords[idx], &coord.congruence(&l));
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(direct.get(i, j).re, acc.get(i, j).re, epsilon = 1e-12);
                assert_abs_diff_eq!(direct.get(i, j).im, acc.get(i, j).im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn nullspace_parametrization_is_consistent() {
        let e = DMatrix::from_row_slice(2, 4, &[1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0]);
        let g = DVector::from_row_slice(&[2.0, 1.0]);
        let (q0, nmap) = eliminate_equalities(&e, &g).expect("consistent system");
        assert_abs_diff_eq!((&e * &q0 - &g).norm(), 0.0, epsilon = 1e-10);
        assert_eq!(nmap.ncols(), 2);
        let prod = &e * &nmap;
        assert_abs_diff_eq!(prod.norm(), 0.0, epsilon = 1e-10);
        let gram = nmap.transpose() * &nmap;
        assert_abs_diff_eq!((gram - DMatrix::identity(2, 2)).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn inconsistent_equalities_detected() {
        let e = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 2.0, 2.0, 0.0]);
        let g = DVector::from_row_slice(&[1.0, 3.0]);
        assert!(eliminate_equalities(&e, &g).is_err());
    }
}
