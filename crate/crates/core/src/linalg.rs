//! Dense complex linear algebra used by every other module: tensor products,
//! partial trace, partial transposition, Hermitian eigendecomposition, SVD,
//! and the Hilbert-Schmidt inner product.
//!
//! Matrices are stored row-major as `Vec<Complex64>`. Everything here targets
//! desk-scale dimensions (well under a hundred); there is no sparsity and no
//! arbitrary-precision arithmetic. All functions are pure and deterministic
//! for a fixed input.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Default absolute tolerance (max norm) for hermiticity and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

// ── Bipartite dimensions ─────────────────────────────────────────────────────

/// Which tensor factor of H_A ⊗ H_B an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dimensions (d_A, d_B) of a bipartite Hilbert space H_A ⊗ H_B.
///
/// Basis ordering is row-major computational: |i⟩|j⟩ maps to index
/// `i * d_B + j`. Every matrix tagged with a `BipartiteDims` is square with
/// side `d_A * d_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    d_a: usize,
    d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::Domain(format!(
                "bipartite dimensions must be at least 1, got ({d_a}, {d_b})"
            )));
        }
        d_a.checked_mul(d_b).ok_or_else(|| {
            Error::Dimension(format!("dimension product {d_a} x {d_b} overflows"))
        })?;
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// Total dimension d_A * d_B of the joint space.
    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn dim_of(&self, s: Subsystem) -> usize {
        match s {
            Subsystem::A => self.d_a,
            Subsystem::B => self.d_b,
        }
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.d_a, self.d_b)
    }
}

// ── Complex matrices ─────────────────────────────────────────────────────────

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation(
                "matrix entries must be finite (no NaN/Inf)".into(),
            ));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds a real matrix from row-major `f64` entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Rank-one matrix |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(Complex64::new(s, 0.0))
    }

    /// Trace of a square matrix. Panics on non-square input.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ‖M − M†‖ in the max norm; zero for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Matrix-vector product. Panics on shape mismatch.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Extracts column `j`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

// ── Vector helpers ───────────────────────────────────────────────────────────

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "inner product length mismatch");
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Euclidean norm.
pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// ── Bipartite operations ─────────────────────────────────────────────────────

/// Kronecker (tensor) product A ⊗ B.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a
        .rows()
        .checked_mul(b.rows())
        .ok_or_else(|| Error::Dimension("kron row count overflows".into()))?;
    let cols = a
        .cols()
        .checked_mul(b.cols())
        .ok_or_else(|| Error::Dimension("kron column count overflows".into()))?;
    rows.checked_mul(cols)
        .ok_or_else(|| Error::Dimension("kron entry count overflows".into()))?;
    let (rb, cb) = (b.rows(), b.cols());
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        a[(i / rb, j / cb)] * b[(i % rb, j % cb)]
    }))
}

/// Partial transposition of a bipartite operator with respect to one
/// subsystem. In block-index form (subsystem A): the (i,μ),(j,ν) entry of the
/// result is the (j,μ),(i,ν) entry of the input. Preserves the trace exactly
/// and maps Hermitian matrices to Hermitian matrices.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: BipartiteDims,
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    let n = dims.total();
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected {n}x{n} for dims {dims}",
            rho.rows(),
            rho.cols()
        )));
    }
    let db = dims.d_b();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..dims.d_a() {
        for j in 0..dims.d_a() {
            for mu in 0..db {
                for nu in 0..db {
                    let (r, c) = (i * db + mu, j * db + nu);
                    let src = match subsystem {
                        Subsystem::A => (j * db + mu, i * db + nu),
                        Subsystem::B => (i * db + nu, j * db + mu),
                    };
                    out[(r, c)] = rho[src];
                }
            }
        }
    }
    Ok(out)
}

/// Traces out one subsystem of a bipartite operator, keeping the other.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: BipartiteDims,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    let n = dims.total();
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected {n}x{n} for dims {dims}",
            rho.rows(),
            rho.cols()
        )));
    }
    let (da, db) = (dims.d_a(), dims.d_b());
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|mu| rho[(i * db + mu, j * db + mu)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |mu, nu| {
            (0..da).map(|i| rho[(i * db + mu, i * db + nu)]).sum()
        }),
    };
    Ok(out)
}

/// Hilbert-Schmidt inner product ⟨A|B⟩ = tr(A†B) = Σ conj(A_ij) B_ij.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Dimension(format!(
            "shapes {}x{} and {}x{} differ",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

// ── Spectral decompositions ──────────────────────────────────────────────────

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// descending, matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered like the
    /// eigenvalues.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is nonempty")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn to_na(m: &ComplexMatrix) -> nalgebra::DMatrix<Complex64> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Hermitian eigendecomposition with the default hermiticity tolerance.
pub fn eigh(m: &ComplexMatrix) -> Result<Spectrum> {
    eigh_with_tol(m, DEFAULT_TOL)
}

/// Hermitian eigendecomposition. The input must be Hermitian within
/// `hermiticity_tol` in the max norm; it is symmetrized as (M + M†)/2 before
/// factoring, so the reported spectrum is exactly that of the Hermitian part.
pub fn eigh_with_tol(m: &ComplexMatrix, hermiticity_tol: f64) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigh requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > hermiticity_tol {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian: defect {defect:.3e} exceeds {hermiticity_tol:.3e}"
        )));
    }
    let n = m.rows();
    let na = to_na(m);
    let herm = (na.adjoint() + &na) * Complex64::new(0.5, 0.0);
    let se = herm.symmetric_eigen();
    if se.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("eigendecomposition produced non-finite eigenvalues".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        se.eigenvalues[j]
            .partial_cmp(&se.eigenvalues[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let eigenvectors =
        ComplexMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Singular value decomposition M = U diag(s) V†, singular values descending.
/// U and V have orthonormal columns (thin form).
pub fn svd(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    let na = to_na(m);
    let k = m.rows().min(m.cols());
    let f = na.svd(true, true);
    if f.singular_values.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("SVD produced non-finite singular values".into()));
    }
    let u_na = f.u.as_ref().expect("requested U");
    let vt_na = f.v_t.as_ref().expect("requested V^T");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        f.singular_values[j]
            .partial_cmp(&f.singular_values[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let s: Vec<f64> = order.iter().map(|&i| f.singular_values[i]).collect();
    let u = ComplexMatrix::from_fn(m.rows(), k, |i, j| u_na[(i, order[j])]);
    // rows of V† are conjugated columns of V
    let v = ComplexMatrix::from_fn(m.cols(), k, |i, j| vt_na[(order[j], i)].conj());
    Ok((u, s, v))
}

/// Conjugation U M U† (basis change for operators).
pub fn conjugate_by(m: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    &(u * m) * &u.adjoint()
}

// ── Pauli matrices ───────────────────────────────────────────────────────────

/// The 2x2 Pauli matrices and direction contractions.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static entries")
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::ZERO,
            ],
        )
        .expect("static entries")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static entries")
    }

    /// n · σ for a direction n in R³ (not required to be unit length; the
    /// contraction is linear in n).
    pub fn dot(n: [f64; 3]) -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(n[2], 0.0),
                Complex64::new(n[0], -n[1]),
                Complex64::new(n[0], n[1]),
                Complex64::new(-n[2], 0.0),
            ],
        )
        .expect("static entries")
    }
}
