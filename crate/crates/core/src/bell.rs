//! CHSH machinery for two-qubit states: correlation functions, the CHSH
//! operator, and numerical maximization of the violation over measurement
//! directions.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix};
use crate::states::DensityMatrix;

/// Classical (local hidden variable) bound on the CHSH combination.
pub const CHSH_CLASSICAL_BOUND: f64 = 2.0;

/// Largest CHSH value any two-qubit state can reach, 2√2. Used as an
/// empirical sanity bound on the optimizer output.
pub const CHSH_QUANTUM_MAX: f64 = 2.0 * std::f64::consts::SQRT_2;

// ── Measurement settings ─────────────────────────────────────────────────────

/// Four measurement directions (unit vectors in R³) for a, a′, b, b′.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChshSetting {
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub b: [f64; 3],
    pub b_prime: [f64; 3],
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl ChshSetting {
    pub fn new(a: [f64; 3], a_prime: [f64; 3], b: [f64; 3], b_prime: [f64; 3]) -> Result<Self> {
        for (name, v) in [("a", a), ("a'", a_prime), ("b", b), ("b'", b_prime)] {
            let n = norm3(v);
            if (n - 1.0).abs() > 1e-10 {
                return Err(Error::Domain(format!(
                    "direction {name} has norm {n}, expected a unit vector"
                )));
            }
        }
        Ok(Self { a, a_prime, b, b_prime })
    }

    /// Builds a setting from spherical angles (θ, φ) per direction, in the
    /// order a, a′, b, b′.
    pub fn from_angles(angles: &[f64; 8]) -> Self {
        let dir = |theta: f64, phi: f64| {
            [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]
        };
        Self {
            a: dir(angles[0], angles[1]),
            a_prime: dir(angles[2], angles[3]),
            b: dir(angles[4], angles[5]),
            b_prime: dir(angles[6], angles[7]),
        }
    }

    /// The planar setting that maximizes the CHSH combination on the singlet:
    /// a and a′ orthogonal, b and b′ on the same plane halfway between them
    /// (the 45° geometry), oriented so the singlet expectation is +2√2.
    pub fn singlet_optimal() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: [0.0, 0.0, 1.0],
            a_prime: [1.0, 0.0, 0.0],
            b: [-s, 0.0, -s],
            b_prime: [s, 0.0, -s],
        }
    }

    pub fn directions(&self) -> [[f64; 3]; 4] {
        [self.a, self.a_prime, self.b, self.b_prime]
    }
}

// ── Correlators and the CHSH operator ────────────────────────────────────────

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    let dims = rho.dims();
    if dims.d_a() != 2 || dims.d_b() != 2 {
        return Err(Error::Dimension(format!(
            "CHSH requires a 2x2 bipartite state, got {dims}"
        )));
    }
    Ok(())
}

/// Correlation function E(a, b) = tr(ρ (a·σ) ⊗ (b·σ)).
///
/// Linear in both directions; for unit vectors on a state the value lies in
/// [−1, 1].
pub fn correlator(rho: &DensityMatrix, a: [f64; 3], b: [f64; 3]) -> Result<f64> {
    require_two_qubits(rho)?;
    let op = linalg::kron(&pauli::dot(a), &pauli::dot(b))?;
    Ok((&op * rho.mat()).trace().re)
}

/// The CHSH operator B̃ = σ_a·σ_b + σ_a·σ_b′ + σ_a′·σ_b − σ_a′·σ_b′.
pub fn chsh_operator(s: &ChshSetting) -> ComplexMatrix {
    let term = |u: [f64; 3], v: [f64; 3]| {
        linalg::kron(&pauli::dot(u), &pauli::dot(v)).expect("2x2 kron")
    };
    let sum = &(&term(s.a, s.b) + &term(s.a, s.b_prime)) + &term(s.a_prime, s.b);
    &sum - &term(s.a_prime, s.b_prime)
}

/// CHSH combination tr(B̃ ρ) = E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′).
pub fn chsh_value(rho: &DensityMatrix, s: &ChshSetting) -> Result<f64> {
    require_two_qubits(rho)?;
    let value = (&chsh_operator(s) * rho.mat()).trace().re;
    debug_assert!(value.abs() <= CHSH_QUANTUM_MAX + 1e-8);
    Ok(value)
}

// ── Maximization over settings ───────────────────────────────────────────────

/// Pauli correlation matrix T_ij = tr(ρ σ_i ⊗ σ_j). The CHSH combination is
/// the exact contraction a·T(b+b′) + a′·T(b−b′), which is what the optimizer
/// evaluates.
fn correlation_matrix(rho: &DensityMatrix) -> [[f64; 3]; 3] {
    let paulis = [pauli::x(), pauli::y(), pauli::z()];
    let mut t = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            let op = linalg::kron(si, sj).expect("2x2 kron");
            t[i][j] = (&op * rho.mat()).trace().re;
        }
    }
    t
}

fn apply_t(t: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        t[0][0] * v[0] + t[0][1] * v[1] + t[0][2] * v[2],
        t[1][0] * v[0] + t[1][1] * v[1] + t[1][2] * v[2],
        t[2][0] * v[0] + t[2][1] * v[1] + t[2][2] * v[2],
    ]
}

fn dot3(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn chsh_from_angles(t: &[[f64; 3]; 3], angles: &[f64; 8]) -> f64 {
    let s = ChshSetting::from_angles(angles);
    let plus = [s.b[0] + s.b_prime[0], s.b[1] + s.b_prime[1], s.b[2] + s.b_prime[2]];
    let minus = [s.b[0] - s.b_prime[0], s.b[1] - s.b_prime[1], s.b[2] - s.b_prime[2]];
    (dot3(s.a, apply_t(t, plus)) + dot3(s.a_prime, apply_t(t, minus))).abs()
}

/// Golden-section refinement of a single angle: coarse scan to bracket the
/// best lobe, then shrink the bracket to below `tol`.
fn golden_refine(mut f: impl FnMut(f64) -> f64, center: f64, tol: f64) -> f64 {
    const SCAN: usize = 16;
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    const INVPHI2: f64 = 0.381_966_011_250_105_2;
    let spacing = std::f64::consts::TAU / SCAN as f64;
    let (mut best_x, mut best_f) = (center, f(center));
    for k in 0..SCAN {
        let x = center + k as f64 * spacing;
        let fx = f(x);
        if fx > best_f {
            best_f = fx;
            best_x = x;
        }
    }
    let mut lo = best_x - spacing;
    let mut hi = best_x + spacing;
    let mut h = hi - lo;
    let mut x1 = lo + INVPHI2 * h;
    let mut x2 = lo + INVPHI * h;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while h > tol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            h = hi - lo;
            x1 = lo + INVPHI2 * h;
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            h = hi - lo;
            x2 = lo + INVPHI * h;
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Maximizes |tr(B̃ ρ)| over all eight spherical angles by coordinate-wise
/// golden-section refinement from `restarts` random starts. Returns the best
/// value found (a lower bound on the true maximum, monotone in `restarts`)
/// and the directions that achieve it. No planarity is assumed.
pub fn maximize_chsh(
    rho: &DensityMatrix,
    restarts: usize,
    rng: &mut impl Rng,
) -> Result<(f64, ChshSetting)> {
    require_two_qubits(rho)?;
    let t = correlation_matrix(rho);
    let restarts = restarts.max(1);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_angles = [0.0f64; 8];

    for _ in 0..restarts {
        let mut angles = [0.0f64; 8];
        for a in &mut angles {
            *a = rng.random::<f64>() * std::f64::consts::TAU;
        }
        let mut current = chsh_from_angles(&t, &angles);
        for _ in 0..100 {
            for k in 0..8 {
                let refined = golden_refine(
                    |x| {
                        let mut trial = angles;
                        trial[k] = x;
                        chsh_from_angles(&t, &trial)
                    },
                    angles[k],
                    1e-9,
                );
                angles[k] = refined;
            }
            let next = chsh_from_angles(&t, &angles);
            if next - current < 1e-12 {
                current = next;
                break;
            }
            current = next;
        }
        if current > best_val {
            best_val = current;
            best_angles = angles;
        }
    }

    let setting = ChshSetting::from_angles(&best_angles);
    let value = chsh_value(rho, &setting)?.abs();
    Ok((value, setting))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{conjugate_by, eigh, kron, BipartiteDims, ComplexMatrix};
    use crate::states::{
        bell_state, projector, random_separable, random_unitary, werner, BellKind, DensityMatrix,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn singlet() -> DensityMatrix {
        projector(&bell_state(BellKind::PsiMinus))
    }

    #[test]
    fn correlator_on_singlet_is_minus_cosine() {
        let rho = singlet();
        for theta in [0.0, 0.3, std::f64::consts::FRAC_PI_2, 2.0, std::f64::consts::PI] {
            let a = [0.0, 0.0, 1.0];
            let b = [theta.sin(), 0.0, theta.cos()];
            let e = correlator(&rho, a, b).unwrap();
            assert!((e + theta.cos()).abs() < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn correlator_on_maximally_mixed_vanishes() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let mixed =
            DensityMatrix::new(ComplexMatrix::identity(4).scaled_re(0.25), dims).unwrap();
        let e = correlator(&mixed, [1.0, 0.0, 0.0], [0.3, 0.4, (1.0f64 - 0.25).sqrt()]).unwrap();
        assert!(e.abs() < 1e-14);
    }

    #[test]
    fn correlator_is_bilinear() {
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        let rho = {
            let dims = BipartiteDims::new(2, 2).unwrap();
            crate::states::random_density(dims, 4, &mut rng).unwrap()
        };
        let u = [0.2, -0.4, 0.7];
        let v = [0.5, 0.1, -0.3];
        let w = [-0.6, 0.2, 0.2];
        let sum = [u[0] + v[0], u[1] + v[1], u[2] + v[2]];
        let lhs = correlator(&rho, sum, w).unwrap();
        let rhs = correlator(&rho, u, w).unwrap() + correlator(&rho, v, w).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let lhs = correlator(&rho, w, sum).unwrap();
        let rhs = correlator(&rho, w, u).unwrap() + correlator(&rho, w, v).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn chsh_value_at_optimal_setting() {
        let v = chsh_value(&singlet(), &ChshSetting::singlet_optimal()).unwrap();
        assert!((v.abs() - CHSH_QUANTUM_MAX).abs() < 1e-12);
        // the identity part of the Werner state is traceless against Pauli
        // products, so the value scales linearly in p at a fixed setting
        for p in [0.25, 0.6] {
            let v = chsh_value(&werner(p).unwrap(), &ChshSetting::singlet_optimal()).unwrap();
            assert!((v - p * CHSH_QUANTUM_MAX).abs() < 1e-12);
        }
    }

    #[test]
    fn chsh_operator_spectrum_at_optimal_setting() {
        let op = chsh_operator(&ChshSetting::singlet_optimal());
        let spec = eigh(&op).unwrap();
        let expected = [CHSH_QUANTUM_MAX, 0.0, 0.0, -CHSH_QUANTUM_MAX];
        for (got, want) in spec.eigenvalues().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn chsh_with_all_directions_equal() {
        // B̃ collapses to 2 σ_a·σ_a, giving 2 E(a,a) = −2 on the singlet
        let a = [0.0, 0.0, 1.0];
        let s = ChshSetting::new(a, a, a, a).unwrap();
        let v = chsh_value(&singlet(), &s).unwrap();
        assert!((v + 2.0).abs() < 1e-12);
    }

    #[test]
    fn chsh_value_matches_correlator_route() {
        let mut rng = ChaCha12Rng::seed_from_u64(67);
        let dims = BipartiteDims::new(2, 2).unwrap();
        for _ in 0..20 {
            let rho = crate::states::random_density(dims, 4, &mut rng).unwrap();
            let angles: [f64; 8] = std::array::from_fn(|_| rng.random::<f64>() * 6.0);
            let s = ChshSetting::from_angles(&angles);
            let via_operator = chsh_value(&rho, &s).unwrap();
            let via_correlators = correlator(&rho, s.a, s.b).unwrap()
                + correlator(&rho, s.a, s.b_prime).unwrap()
                + correlator(&rho, s.a_prime, s.b).unwrap()
                - correlator(&rho, s.a_prime, s.b_prime).unwrap();
            assert!((via_operator - via_correlators).abs() < 1e-10);
        }
    }

    #[test]
    fn maximize_chsh_on_singlet_reaches_tsirelson() {
        let mut rng = ChaCha12Rng::seed_from_u64(71);
        let (v, s) = maximize_chsh(&singlet(), 32, &mut rng).unwrap();
        assert!((v - CHSH_QUANTUM_MAX).abs() < 1e-6, "got {v}");
        for d in s.directions() {
            assert!((norm3(d) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn maximize_chsh_on_werner_scales_linearly() {
        // identity part is traceless against Pauli products, so the optimum
        // is p times the singlet optimum; crosses 2 at p = 1/√2
        let mut rng = ChaCha12Rng::seed_from_u64(73);
        for p in [0.3, 0.5, 1.0 / std::f64::consts::SQRT_2, 0.9] {
            let (v, _) = maximize_chsh(&werner(p).unwrap(), 16, &mut rng).unwrap();
            assert!((v - CHSH_QUANTUM_MAX * p).abs() < 1e-5, "p={p} v={v}");
        }
    }

    #[test]
    fn maximize_chsh_respects_lhv_bound_on_separable_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(79);
        let dims = BipartiteDims::new(2, 2).unwrap();

        // |00⟩: the optimum is exactly the classical bound
        let zero_zero = {
            use num_complex::Complex64;
            let v = vec![Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::ZERO];
            projector(&crate::states::PureState::new(v, dims).unwrap())
        };
        let (v, _) = maximize_chsh(&zero_zero, 8, &mut rng).unwrap();
        assert!((v - CHSH_CLASSICAL_BOUND).abs() < 1e-5, "got {v}");

        for _ in 0..50 {
            let rho = random_separable(dims, 16, &mut rng).unwrap();
            let (v, _) = maximize_chsh(&rho, 8, &mut rng).unwrap();
            assert!(v <= CHSH_CLASSICAL_BOUND + 1e-5, "separable state broke LHV bound: {v}");
        }
    }

    #[test]
    fn maximize_chsh_is_invariant_under_local_unitaries() {
        let mut rng = ChaCha12Rng::seed_from_u64(83);
        let dims = BipartiteDims::new(2, 2).unwrap();
        for _ in 0..5 {
            let rho = crate::states::random_density(dims, 2, &mut rng).unwrap();
            let (v0, _) = maximize_chsh(&rho, 16, &mut rng).unwrap();
            let u = kron(&random_unitary(2, &mut rng), &random_unitary(2, &mut rng)).unwrap();
            let rotated = DensityMatrix::new(conjugate_by(rho.mat(), &u), dims).unwrap();
            let (v1, _) = maximize_chsh(&rotated, 16, &mut rng).unwrap();
            assert!((v0 - v1).abs() < 1e-5, "optimum moved under local unitaries: {v0} vs {v1}");
        }
    }

    #[test]
    fn setting_rejects_non_unit_directions() {
        let bad = ChshSetting::new([0.0, 0.0, 2.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }
}
