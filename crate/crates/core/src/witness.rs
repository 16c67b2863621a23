//! Entanglement witnesses and positive maps: construction, evaluation,
//! decomposability certificates, numerical block-positivity via a see-saw,
//! and the operator ↔ map isomorphism.
//!
//! A witness is a Hermitian operator with tr(Wσ) ≥ 0 on every separable σ
//! and tr(Wρ) < 0 for some entangled ρ; a negative value certifies
//! entanglement. Decomposable witnesses W = P + Q^{T_A} (P, Q ⪰ 0) carry
//! their certificate and are provably blind to PPT entanglement.

use num_complex::Complex64;
use rand::Rng;

use crate::bell::{self, ChshSetting, CHSH_CLASSICAL_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{self, BipartiteDims, ComplexMatrix, Subsystem};
use crate::states::{self, DensityMatrix};

// ── Witness type ─────────────────────────────────────────────────────────────

/// Hermitian witness operator, optionally with a decomposition certificate
/// (P, Q) such that W = P + Q^{T_A} with both parts positive semidefinite.
#[derive(Debug, Clone)]
pub struct Witness {
    op: ComplexMatrix,
    dims: BipartiteDims,
    decomposition: Option<(ComplexMatrix, ComplexMatrix)>,
}

impl Witness {
    pub fn new(op: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        let n = dims.total();
        if op.rows() != n || op.cols() != n {
            return Err(Error::Dimension(format!(
                "witness is {}x{}, expected {n}x{n} for dims {dims}",
                op.rows(),
                op.cols()
            )));
        }
        let defect = op.hermiticity_defect();
        if defect > linalg::DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "witness is not Hermitian: defect {defect:.3e}"
            )));
        }
        Ok(Self { op, dims, decomposition: None })
    }

    /// Attaches a (P, Q) certificate after checking P, Q ⪰ 0 and
    /// W = P + Q^{T_A} within tolerance.
    pub fn with_decomposition(
        op: ComplexMatrix,
        dims: BipartiteDims,
        p: ComplexMatrix,
        q: ComplexMatrix,
    ) -> Result<Self> {
        let w = Self::new(op, dims)?;
        for (name, part) in [("P", &p), ("Q", &q)] {
            let min_eig = linalg::eigh(part)?.min_eigenvalue();
            if min_eig < -linalg::DEFAULT_TOL {
                return Err(Error::Validation(format!(
                    "{name} is not positive semidefinite: min eigenvalue {min_eig:.3e}"
                )));
            }
        }
        let rebuilt = &p + &linalg::partial_transpose(&q, dims, Subsystem::A)?;
        let defect = (&w.op - &rebuilt).max_norm();
        if defect > linalg::DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "decomposition does not reproduce the witness: defect {defect:.3e}"
            )));
        }
        Ok(Self { decomposition: Some((p, q)), ..w })
    }

    pub fn op(&self) -> &ComplexMatrix {
        &self.op
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn decomposition(&self) -> Option<(&ComplexMatrix, &ComplexMatrix)> {
        self.decomposition.as_ref().map(|(p, q)| (p, q))
    }

    pub fn is_decomposable_certified(&self) -> bool {
        self.decomposition.is_some()
    }
}

/// tr(Wρ). Negative means ρ is certified entangled.
pub fn witness_value(w: &Witness, rho: &DensityMatrix) -> Result<f64> {
    if w.dims() != rho.dims() {
        return Err(Error::Dimension(format!(
            "witness dims {} do not match state dims {}",
            w.dims(),
            rho.dims()
        )));
    }
    let val = (w.op() * rho.mat()).trace();
    debug_assert!(val.im.abs() < 1e-10);
    Ok(val.re)
}

/// The standard two-qubit witness W = (|φ⁺⟩⟨φ⁺|)^{T_A} = ½(I − 2|ψ⁻⟩⟨ψ⁻|),
/// carrying its decomposition certificate (P = 0, Q = |φ⁺⟩⟨φ⁺|). Detects the
/// singlet with value −1/2.
pub fn canonical_witness_2x2() -> Witness {
    let dims = BipartiteDims::new(2, 2).expect("2x2");
    let q = states::projector(&states::bell_state(states::BellKind::PhiPlus));
    let op = linalg::partial_transpose(q.mat(), dims, Subsystem::A).expect("4x4 operator");
    Witness::with_decomposition(op, dims, ComplexMatrix::zeros(4, 4), q.mat().clone())
        .expect("canonical construction satisfies the certificate")
}

/// Builds W = P + Q^{T_A} from positive semidefinite P and Q. Such a witness
/// cannot detect PPT entangled states.
pub fn decomposable_witness(
    p: ComplexMatrix,
    q: ComplexMatrix,
    dims: BipartiteDims,
) -> Result<Witness> {
    let n = dims.total();
    for (name, part) in [("P", &p), ("Q", &q)] {
        if part.rows() != n || part.cols() != n {
            return Err(Error::Dimension(format!(
                "{name} is {}x{}, expected {n}x{n}",
                part.rows(),
                part.cols()
            )));
        }
        let min_eig = linalg::eigh(part)?.min_eigenvalue();
        if min_eig < -linalg::DEFAULT_TOL {
            return Err(Error::Domain(format!(
                "{name} is not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )));
        }
    }
    let op = &p + &linalg::partial_transpose(&q, dims, Subsystem::A)?;
    Witness::with_decomposition(op, dims, p, q)
}

// ── Block positivity via see-saw ─────────────────────────────────────────────

fn contract_over_b(w: &ComplexMatrix, dims: BipartiteDims, f: &[Complex64]) -> ComplexMatrix {
    let (da, db) = (dims.d_a(), dims.d_b());
    ComplexMatrix::from_fn(da, da, |i, j| {
        let mut acc = Complex64::ZERO;
        for mu in 0..db {
            for nu in 0..db {
                acc += f[mu].conj() * w[(i * db + mu, j * db + nu)] * f[nu];
            }
        }
        acc
    })
}

fn contract_over_a(w: &ComplexMatrix, dims: BipartiteDims, e: &[Complex64]) -> ComplexMatrix {
    let (da, db) = (dims.d_a(), dims.d_b());
    ComplexMatrix::from_fn(db, db, |mu, nu| {
        let mut acc = Complex64::ZERO;
        for i in 0..da {
            for j in 0..da {
                acc += e[i].conj() * w[(i * db + mu, j * db + nu)] * e[j];
            }
        }
        acc
    })
}

/// Approximates min ⟨e,f|W|e,f⟩ over unit product vectors by an alternating
/// eigenvector see-saw (fix f, take the bottom eigenvector of the contracted
/// operator on A; alternate until the value moves by less than 1e-10), best
/// of `restarts` Haar-random starts.
///
/// The returned value is an upper bound on the true minimum; a clearly
/// negative result certifies the operator is not a witness, while a value
/// near zero is numerical evidence of block positivity.
pub fn min_product_expectation(
    w: &Witness,
    restarts: usize,
    rng: &mut impl Rng,
) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let dims = w.dims();
    let dims_b = BipartiteDims::new(dims.d_b(), 1).expect("positive dims");
    let restarts = restarts.max(1);
    let mut best = (f64::INFINITY, Vec::new(), Vec::new());

    for _ in 0..restarts {
        let mut f = states::random_pure(dims_b, rng).amplitudes().to_vec();
        let mut e: Vec<Complex64> = Vec::new();
        let mut value = f64::INFINITY;
        for _ in 0..500 {
            let on_a = contract_over_b(w.op(), dims, &f);
            let spec_a = linalg::eigh(&on_a).expect("contraction of Hermitian is Hermitian");
            e = spec_a.eigenvector(dims.d_a() - 1);

            let on_b = contract_over_a(w.op(), dims, &e);
            let spec_b = linalg::eigh(&on_b).expect("contraction of Hermitian is Hermitian");
            f = spec_b.eigenvector(dims.d_b() - 1);
            let next = spec_b.min_eigenvalue();

            if (value - next).abs() < 1e-10 {
                value = next;
                break;
            }
            value = next;
        }
        if value < best.0 {
            best = (value, e, f);
        }
    }
    best
}

// ── Positive maps and the operator ↔ map isomorphism ─────────────────────────

/// A linear self-adjoint map ε: B(H_in) → B(H_out), stored as its operator
/// E on H_in ⊗ H_out with ε(ρ) = tr_in(E ρ^{T_in}). E is Hermitian exactly
/// when the map sends Hermitian operators to Hermitian operators.
#[derive(Debug, Clone)]
pub struct LinearMap {
    choi: ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
}

impl LinearMap {
    pub fn new(choi: ComplexMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        let n = dim_in
            .checked_mul(dim_out)
            .ok_or_else(|| Error::Dimension("map dimension product overflows".into()))?;
        if choi.rows() != n || choi.cols() != n {
            return Err(Error::Dimension(format!(
                "operator is {}x{}, expected {n}x{n} for dims {dim_in}->{dim_out}",
                choi.rows(),
                choi.cols()
            )));
        }
        let defect = choi.hermiticity_defect();
        if defect > linalg::DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "map operator is not Hermitian: defect {defect:.3e} (map is not self-adjoint)"
            )));
        }
        Ok(Self { choi, dim_in, dim_out })
    }

    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Whether the operator is positive semidefinite within `tol`, which is
    /// equivalent to the map being completely positive.
    pub fn is_completely_positive(&self, tol: f64) -> bool {
        linalg::eigh(&self.choi)
            .map(|s| s.min_eigenvalue() >= -tol)
            .unwrap_or(false)
    }
}

/// Assembles the operator of a map by applying it to matrix units:
/// E = Σ_ij |i⟩⟨j| ⊗ ε(|i⟩⟨j|), the unnormalized image of the maximally
/// entangled projector under I ⊗ ε.
pub fn choi_from_map(
    eps: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    d_in: usize,
) -> Result<LinearMap> {
    if d_in == 0 {
        return Err(Error::Domain("map input dimension must be at least 1".into()));
    }
    let mut d_out = None;
    let mut blocks: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(d_in);
    for i in 0..d_in {
        let mut row = Vec::with_capacity(d_in);
        for j in 0..d_in {
            let mut unit = ComplexMatrix::zeros(d_in, d_in);
            unit[(i, j)] = Complex64::ONE;
            let image = eps(&unit);
            if !image.is_square() {
                return Err(Error::Dimension("map image is not square".into()));
            }
            match d_out {
                None => d_out = Some(image.rows()),
                Some(d) if d != image.rows() => {
                    return Err(Error::Dimension(
                        "map images have inconsistent dimensions".into(),
                    ));
                }
                _ => {}
            }
            row.push(image);
        }
        blocks.push(row);
    }
    let d_out = d_out.expect("d_in >= 1");
    let n = d_in * d_out;
    let choi = ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / d_out, r % d_out);
        let (j, l) = (c / d_out, c % d_out);
        blocks[i][j][(k, l)]
    });
    LinearMap::new(choi, d_in, d_out)
}

/// Applies the map to a matrix: ε(ρ) = tr_in(E ρ^{T_in}).
pub fn map_from_choi(map: &LinearMap, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.rows() != map.dim_in || rho.cols() != map.dim_in {
        return Err(Error::Dimension(format!(
            "input is {}x{}, expected {0}x{0} with d_in {}",
            rho.rows(),
            rho.cols(),
            map.dim_in
        )));
    }
    let pair = BipartiteDims::new(map.dim_in, map.dim_out)?;
    let extended = linalg::kron(&rho.transpose(), &ComplexMatrix::identity(map.dim_out))?;
    linalg::partial_trace(&(&map.choi * &extended), pair, Subsystem::B)
}

/// Applies I_A ⊗ ε to a bipartite state, block by block. A negative
/// eigenvalue of the output below tolerance certifies entanglement whenever
/// ε is a positive map.
pub fn apply_map_partially(map: &LinearMap, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let dims = rho.dims();
    if dims.d_b() != map.dim_in {
        return Err(Error::Dimension(format!(
            "map acts on dimension {}, state's B side is {}",
            map.dim_in,
            dims.d_b()
        )));
    }
    let (da, db) = (dims.d_a(), dims.d_b());
    let dc = map.dim_out;
    let mut images: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(da);
    for i in 0..da {
        let mut row = Vec::with_capacity(da);
        for j in 0..da {
            let block = ComplexMatrix::from_fn(db, db, |mu, nu| {
                rho.mat()[(i * db + mu, j * db + nu)]
            });
            row.push(map_from_choi(map, &block)?);
        }
        images.push(row);
    }
    let n = da * dc;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / dc, r % dc);
        let (j, l) = (c / dc, c % dc);
        images[i][j][(k, l)]
    }))
}

/// Shifts the CHSH operator into witness form W = 2·I − B̃. Separable states
/// satisfy |tr(B̃σ)| ≤ 2, so tr(Wσ) ≥ 0 on all of them, while the singlet at
/// the optimal setting reaches 2 − 2√2 < 0.
pub fn witness_from_chsh(settings: &ChshSetting) -> Witness {
    let dims = BipartiteDims::new(2, 2).expect("2x2");
    let op = &ComplexMatrix::identity(4).scaled_re(CHSH_CLASSICAL_BOUND)
        - &bell::chsh_operator(settings);
    Witness::new(op, dims).expect("shifted CHSH operator is Hermitian")
}
