//! Validated density matrices, the named two-qubit states, and seeded random
//! generators for property tests.
//!
//! All constructors return matrices that pass `DensityMatrix` validation.
//! Randomness is always caller-owned: functions take an explicit `Rng`, so
//! the same seed reproduces the same state bit for bit.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, BipartiteDims, ComplexMatrix, Subsystem};

/// Validation tolerances for density matrices. Absolute, in the max norm.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub unit_trace: f64,
    pub positivity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: linalg::DEFAULT_TOL,
            unit_trace: linalg::DEFAULT_TOL,
            positivity: linalg::DEFAULT_TOL,
        }
    }
}

// ── Core state types ─────────────────────────────────────────────────────────

/// A validated bipartite density matrix: Hermitian, positive semidefinite,
/// unit trace, tagged with its (d_A, d_B) split.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: BipartiteDims,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        Self::with_tolerances(mat, dims, Tolerances::default())
    }

    pub fn with_tolerances(mat: ComplexMatrix, dims: BipartiteDims, tol: Tolerances) -> Result<Self> {
        let n = dims.total();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {n}x{n} for dims {dims}",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol.hermiticity {
            return Err(Error::Validation(format!(
                "not Hermitian: defect {defect:.3e} exceeds {:.3e}",
                tol.hermiticity
            )));
        }
        let tr = mat.trace();
        if (tr - Complex64::ONE).norm() > tol.unit_trace {
            return Err(Error::Validation(format!(
                "trace {tr} is not 1 within {:.3e}",
                tol.unit_trace
            )));
        }
        let min_eig = linalg::eigh_with_tol(&mat, tol.hermiticity)?.min_eigenvalue();
        if min_eig < -tol.positivity {
            return Err(Error::Validation(format!(
                "not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { mat, dims })
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    /// Reduced state of one subsystem, tr_B ρ or tr_A ρ.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        linalg::partial_trace(&self.mat, self.dims, keep).expect("dims validated at construction")
    }

    /// tr(ρ²); equals 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        linalg::hs_inner(&self.mat, &self.mat)
            .expect("same shape")
            .re
    }
}

/// A unit vector in H_A ⊗ H_B, amplitudes in the row-major computational
/// basis |ij⟩ ↦ i·d_B + j.
#[derive(Debug, Clone)]
pub struct PureState {
    vec: Vec<Complex64>,
    dims: BipartiteDims,
}

impl PureState {
    pub fn new(vec: Vec<Complex64>, dims: BipartiteDims) -> Result<Self> {
        if vec.len() != dims.total() {
            return Err(Error::Dimension(format!(
                "amplitude count {} does not match dims {dims}",
                vec.len()
            )));
        }
        if vec.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("amplitudes must be finite".into()));
        }
        let norm = linalg::vec_norm(&vec);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!(
                "state vector norm {norm} is not 1 within 1e-12"
            )));
        }
        Ok(Self { vec, dims })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.vec
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }
}

// ── Named states ─────────────────────────────────────────────────────────────

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PsiPlus,
        BellKind::PsiMinus,
        BellKind::PhiPlus,
        BellKind::PhiMinus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BellKind::PsiPlus => "psi_plus",
            BellKind::PsiMinus => "psi_minus",
            BellKind::PhiPlus => "phi_plus",
            BellKind::PhiMinus => "phi_minus",
        }
    }
}

impl std::str::FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi_plus" | "psi+" => Ok(BellKind::PsiPlus),
            "psi_minus" | "psi-" => Ok(BellKind::PsiMinus),
            "phi_plus" | "phi+" => Ok(BellKind::PhiPlus),
            "phi_minus" | "phi-" => Ok(BellKind::PhiMinus),
            other => Err(Error::Domain(format!(
                "unknown Bell state '{other}' (expected psi_plus, psi_minus, phi_plus, phi_minus)"
            ))),
        }
    }
}

/// |ψ±⟩ = (|01⟩ ± |10⟩)/√2, |φ±⟩ = (|00⟩ ± |11⟩)/√2.
pub fn bell_state(kind: BellKind) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amp = |x: f64| Complex64::new(x, 0.0);
    let vec = match kind {
        BellKind::PsiPlus => vec![amp(0.0), amp(s), amp(s), amp(0.0)],
        BellKind::PsiMinus => vec![amp(0.0), amp(s), amp(-s), amp(0.0)],
        BellKind::PhiPlus => vec![amp(s), amp(0.0), amp(0.0), amp(s)],
        BellKind::PhiMinus => vec![amp(s), amp(0.0), amp(0.0), amp(-s)],
    };
    PureState::new(vec, BipartiteDims::new(2, 2).expect("2x2"))
        .expect("Bell states are unit vectors")
}

/// Rank-one density matrix |ψ⟩⟨ψ|.
pub fn projector(psi: &PureState) -> DensityMatrix {
    let mat = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
    DensityMatrix::new(mat, psi.dims()).expect("projector of a unit vector is a valid state")
}

/// Werner state p·|ψ⁻⟩⟨ψ⁻| + (1−p)/4·I for p in [0, 1].
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("mixing parameter p={p} outside [0, 1]")));
    }
    let singlet = projector(&bell_state(BellKind::PsiMinus));
    let mat = &singlet.mat().scaled_re(p) + &ComplexMatrix::identity(4).scaled_re((1.0 - p) / 4.0);
    DensityMatrix::new(mat, singlet.dims())
}

// ── Random generators ────────────────────────────────────────────────────────

fn gaussian_vec(len: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn random_pure(dims: BipartiteDims, rng: &mut impl Rng) -> PureState {
    loop {
        let mut v = gaussian_vec(dims.total(), rng);
        let norm = linalg::vec_norm(&v);
        if norm > 1e-6 {
            for z in &mut v {
                *z /= norm;
            }
            return PureState::new(v, dims).expect("normalized vector");
        }
    }
}

/// Random unitary via Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = gaussian_vec(dim, rng);
        // re-orthogonalized modified Gram-Schmidt
        for _ in 0..2 {
            for u in &cols {
                let overlap = linalg::vec_inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= overlap * ui;
                }
            }
        }
        let norm = linalg::vec_norm(&v);
        if norm < 1e-6 {
            continue;
        }
        for z in &mut v {
            *z /= norm;
        }
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Mixture size (d_A·d_B)² that suffices for any separable state.
pub fn default_mixture_size(dims: BipartiteDims) -> usize {
    dims.total() * dims.total()
}

/// Random separable state: a convex combination of `k` products of local
/// projectors, Σ p_i |e_i⟩⟨e_i| ⊗ |f_i⟩⟨f_i|, with Haar-random local pure
/// states and flat-Dirichlet weights.
pub fn random_separable(dims: BipartiteDims, k: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    if k == 0 {
        return Err(Error::Domain("mixture size k must be at least 1".into()));
    }
    // Dirichlet(1,...,1) via normalized unit exponentials
    let mut weights: Vec<f64> = (0..k)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let dims_a = BipartiteDims::new(dims.d_a(), 1)?;
    let dims_b = BipartiteDims::new(dims.d_b(), 1)?;
    let n = dims.total();
    let mut mat = ComplexMatrix::zeros(n, n);
    for &w in &weights {
        let e = random_pure(dims_a, rng);
        let f = random_pure(dims_b, rng);
        let pa = ComplexMatrix::outer(e.amplitudes(), e.amplitudes());
        let pb = ComplexMatrix::outer(f.amplitudes(), f.amplitudes());
        mat = &mat + &linalg::kron(&pa, &pb)?.scaled_re(w);
    }
    DensityMatrix::new(mat, dims)
}

/// Random density matrix of the given rank (Wishart construction G·G†/tr).
pub fn random_density(dims: BipartiteDims, rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let n = dims.total();
    if rank == 0 || rank > n {
        return Err(Error::Domain(format!(
            "rank {rank} outside 1..={n} for dims {dims}"
        )));
    }
    let g = ComplexMatrix::from_fn(n, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut mat = &g * &g.adjoint();
    let tr = mat.trace();
    mat = mat.scaled(Complex64::ONE / tr);
    DensityMatrix::new(mat, dims)
}
