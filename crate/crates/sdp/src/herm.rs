//! Complex Hermitian matrices and their real symmetric embedding.
//!
//! The solver core works over real symmetric blocks. Complex Hermitian data
//! enters through the doubling map `H -> [[Re H, -Im H], [Im H, Re H]]`,
//! which preserves positive semidefiniteness and doubles the multiplicity of
//! every eigenvalue.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Relative tolerance used to accept a matrix as Hermitian.
const HERMITIAN_TOL: f64 = 1e-10;

/// Dense complex Hermitian matrix.
///
/// Construction enforces Hermitian symmetry, so quadratic forms, traces
/// against other Hermitian matrices, and eigenvalues are always real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Wraps a matrix that is already Hermitian.
    ///
    /// # Panics
    ///
    /// Panics if `data` is not square or departs from Hermitian symmetry by
    /// more than a small relative tolerance.
    pub fn new(data: DMatrix<Complex64>) -> Self {
        assert!(data.is_square(), "Hermitian matrix must be square");
        let scale = data
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        for i in 0..data.nrows() {
            for j in i..data.ncols() {
                let err = (data[(i, j)] - data[(j, i)].conj()).norm();
                assert!(
                    err <= HERMITIAN_TOL * scale,
                    "matrix entry ({i},{j}) violates Hermitian symmetry by {err:.3e}"
                );
            }
        }
        Self::hermitian_part(&data)
    }

    /// Returns `(A + A^H) / 2`, the Hermitian part of an arbitrary square matrix.
    pub fn hermitian_part(a: &DMatrix<Complex64>) -> Self {
        assert!(a.is_square(), "Hermitian part needs a square matrix");
        let n = a.nrows();
        let data = DMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
        HermitianMatrix { data }
    }

    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix {
            data: DMatrix::zeros(dim, dim),
        }
    }

    /// Identity scaled by `s`.
    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        HermitianMatrix {
            data: DMatrix::from_diagonal_element(dim, dim, Complex64::new(s, 0.0)),
        }
    }

    /// Rank-one matrix `h^H h` built from a row vector `h`, so that
    /// `Tr(outer(h) * Q)` equals the quadratic form `h Q h^H`.
    pub fn outer(h: &[Complex64]) -> Self {
        let n = h.len();
        let data = DMatrix::from_fn(n, n, |i, j| h[i].conj() * h[j]);
        HermitianMatrix { data }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    /// Read-only access to the underlying complex matrix.
    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.data.diagonal().iter().map(|z| z.re).sum()
    }

    /// Real quadratic form `h Q h^H` for a row vector `h`.
    pub fn quad_form(&self, h: &[Complex64]) -> f64 {
        assert_eq!(h.len(), self.dim(), "vector length must match dimension");
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..h.len() {
            for j in 0..h.len() {
                acc += h[i] * self.data[(i, j)] * h[j].conj();
            }
        }
        acc.re
    }

    /// Real inner product `Tr(self * other)` of two Hermitian matrices.
    pub fn inner(&self, other: &HermitianMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                // Tr(AB) = sum_ij A_ij B_ji; B_ji = conj(B_ij).
                let prod = self.data[(i, j)] * other.data[(i, j)].conj();
                acc += prod.re;
            }
        }
        acc
    }

    /// Congruence `L * self * L^H` by an arbitrary complex matrix `L`.
    pub fn congruence(&self, l: &DMatrix<Complex64>) -> HermitianMatrix {
        assert_eq!(l.ncols(), self.dim(), "congruence dimension mismatch");
        let prod = l * &self.data * l.adjoint();
        HermitianMatrix::hermitian_part(&prod)
    }

    /// Returns `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        HermitianMatrix {
            data: &self.data + other.data.scale(s),
        }
    }

    /// Returns `s * self`.
    pub fn scaled(&self, s: f64) -> HermitianMatrix {
        HermitianMatrix {
            data: self.data.scale(s),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = self.data.clone().symmetric_eigenvalues();
        let mut vals: Vec<f64> = eig.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues must be finite"));
        vals
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .first()
            .copied()
            .expect("matrix must be non-empty")
    }
}

/// Embeds a complex Hermitian `n x n` matrix as the real symmetric `2n x 2n`
/// matrix `[[Re H, -Im H], [Im H, Re H]]`.
///
/// The embedding is a *2-isometry on spectra*: each complex eigenvalue
/// appears twice in the real matrix, so positive semidefiniteness is
/// preserved in both directions.
pub fn embed_hermitian(h: &HermitianMatrix) -> DMatrix<f64> {
    let n = h.dim();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            out[(i, j)] = z.re;
            out[(n + i, n + j)] = z.re;
            out[(i, n + j)] = -z.im;
            out[(n + i, j)] = z.im;
        }
    }
    out
}

/// Recovers a complex Hermitian matrix from a real symmetric `2n x 2n` block.
///
/// Averages the two real sub-blocks and the two imaginary sub-blocks, then
/// takes the Hermitian part `(Q + Q^H) / 2`. For matrices produced by
/// [`embed_hermitian`] this is an exact inverse; for nearby symmetric
/// matrices it is the natural projection back onto the embedded subspace.
pub fn extract_hermitian(m: &DMatrix<f64>) -> HermitianMatrix {
    assert!(m.is_square(), "embedded matrix must be square");
    assert!(m.nrows() % 2 == 0, "embedded matrix must have even dimension");
    let n = m.nrows() / 2;
    let approx = DMatrix::from_fn(n, n, |i, j| {
        let re = 0.5 * (m[(i, j)] + m[(n + i, n + j)]);
        let im = 0.5 * (m[(n + i, j)] - m[(i, n + j)]);
        Complex64::new(re, im)
    });
    HermitianMatrix::hermitian_part(&approx)
}
