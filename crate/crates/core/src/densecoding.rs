//! Dense coding: the Holevo quantity, the one-shot unitary-encoding capacity,
//! the ideal two-qubit protocol, and the four-shell classification of
//! bipartite states by their usefulness for dense coding.

use serde::Serialize;

use crate::criteria::{
    self, entropy_of_state, ppt_conclusive_dims, von_neumann_entropy, CriterionVerdict,
};
use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix, Subsystem};
use crate::states::{bell_state, BellKind, DensityMatrix};
use crate::witness::{witness_value, Witness};

/// Threshold on S(ρ_B) − S(ρ) above which a state counts as dense-codeable.
pub const DC_THRESHOLD: f64 = 1e-9;

// ── Ensembles and the Holevo bound ──────────────────────────────────────────

/// A labelled mixture {p_i, ρ_i} of states on a common space.
#[derive(Debug, Clone)]
pub struct Ensemble {
    probs: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(probs: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if probs.len() != states.len() || probs.is_empty() {
            return Err(Error::Dimension(format!(
                "{} probabilities for {} states",
                probs.len(),
                states.len()
            )));
        }
        if probs.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::Domain("ensemble probabilities must be nonnegative".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "ensemble probabilities sum to {sum}, not 1 within 1e-9"
            )));
        }
        let dims = states[0].dims();
        if states.iter().any(|s| s.dims() != dims) {
            return Err(Error::Dimension("ensemble states live on different spaces".into()));
        }
        Ok(Self { probs, states })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// Average state ρ̄ = Σ p_i ρ_i.
    pub fn average_state(&self) -> ComplexMatrix {
        let n = self.states[0].mat().rows();
        let mut avg = ComplexMatrix::zeros(n, n);
        for (p, s) in self.probs.iter().zip(&self.states) {
            avg = &avg + &s.mat().scaled_re(*p);
        }
        avg
    }
}

/// Holevo quantity χ = S(ρ̄) − Σ p_i S(ρ_i) in bits: the upper bound on the
/// classical information accessible from the ensemble.
pub fn holevo_chi(ens: &Ensemble) -> f64 {
    let avg_entropy =
        von_neumann_entropy(&ens.average_state()).expect("average of valid states is PSD");
    let conditional: f64 = ens
        .probs
        .iter()
        .zip(&ens.states)
        .map(|(p, s)| p * entropy_of_state(s))
        .sum();
    (avg_entropy - conditional).max(0.0)
}

// ── Dense-coding capacity ────────────────────────────────────────────────────

/// One-shot unitary-encoding capacity C⁽¹⁾(ρ) = log₂ d_A + S(ρ_B) − S(ρ)
/// in bits, exactly as the closed form (no flooring).
pub fn dc_capacity(rho: &DensityMatrix) -> f64 {
    (rho.dims().d_a() as f64).log2() + dc_advantage(rho)
}

/// Capacity actually achievable, max(C⁽¹⁾, log₂ d_A): the shared state can
/// always be ignored, so the unassisted baseline is a floor.
pub fn reported_capacity(rho: &DensityMatrix) -> f64 {
    dc_capacity(rho).max((rho.dims().d_a() as f64).log2())
}

/// S(ρ_B) − S(ρ) in bits; positive exactly for dense-codeable states.
pub fn dc_advantage(rho: &DensityMatrix) -> f64 {
    let s_b = von_neumann_entropy(&rho.reduced(Subsystem::B))
        .expect("reduced state is PSD within tolerance");
    s_b - entropy_of_state(rho)
}

/// Whether sharing ρ beats the unassisted channel.
pub fn is_dc(rho: &DensityMatrix) -> bool {
    dc_advantage(rho) > DC_THRESHOLD
}

/// The four-message Pauli encoding ensemble {1/4, (σ_j ⊗ I) ρ (σ_j ⊗ I)} for
/// j over {I, σ_x, σ_y, σ_z}. Requires d_A = 2. Its average state is
/// I/2 ⊗ ρ_B, so its Holevo quantity equals the closed-form capacity.
pub fn pauli_encoding_ensemble(rho: &DensityMatrix) -> Result<Ensemble> {
    let dims = rho.dims();
    if dims.d_a() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "Pauli encoding needs d_A = 2, got d_A = {}",
            dims.d_a()
        )));
    }
    let id_b = ComplexMatrix::identity(dims.d_b());
    let mut states = Vec::with_capacity(4);
    for op in [ComplexMatrix::identity(2), pauli::x(), pauli::y(), pauli::z()] {
        let local = linalg::kron(&op, &id_b)?;
        let encoded = linalg::conjugate_by(rho.mat(), &local);
        states.push(DensityMatrix::new(encoded, dims)?);
    }
    Ensemble::new(vec![0.25; 4], states)
}

/// Ideal dense-coding round on a fresh singlet. The sender applies the
/// operator agreed for `message` (σ_x ⇒ 0, σ_y ⇒ 1, σ_z ⇒ 2, I ⇒ 3) to the
/// first qubit; the receiver measures in the Bell basis. Decoding is
/// deterministic because the four encoded states are orthogonal.
pub fn simulate_protocol(message: usize) -> Result<usize> {
    if message > 3 {
        return Err(Error::Domain(format!("message {message} outside 0..=3")));
    }
    let encoding_op = match message {
        0 => pauli::x(),
        1 => pauli::y(),
        2 => pauli::z(),
        _ => ComplexMatrix::identity(2),
    };
    let full_op = linalg::kron(&encoding_op, &ComplexMatrix::identity(2))?;
    let sent = full_op.matvec(bell_state(BellKind::PsiMinus).amplitudes());

    // Bell-basis measurement; outcome k identifies the message whose
    // encoding lands there (global phases drop out of the projection).
    let outcomes = [
        BellKind::PhiMinus, // σ_x ⊗ I |ψ⁻⟩ = −|φ⁻⟩
        BellKind::PhiPlus,  // σ_y ⊗ I |ψ⁻⟩ =  i|φ⁺⟩
        BellKind::PsiPlus,  // σ_z ⊗ I |ψ⁻⟩ =   |ψ⁺⟩
        BellKind::PsiMinus, // I ⊗ I |ψ⁻⟩ =     |ψ⁻⟩
    ];
    let mut best = (0usize, -1.0f64);
    for (k, kind) in outcomes.iter().enumerate() {
        let prob = linalg::vec_inner(bell_state(*kind).amplitudes(), &sent).norm_sqr();
        if prob > best.1 {
            best = (k, prob);
        }
    }
    debug_assert!(best.1 > 1.0 - 1e-12, "Bell measurement was not deterministic");
    Ok(best.0)
}

// ── Classification ───────────────────────────────────────────────────────────

/// Shell labels, from the separable core outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    /// Separable, certified by the PPT test in 2⊗2 or 2⊗3.
    #[serde(rename = "SEP")]
    Sep,
    /// PPT in higher dimensions: separable or bound entangled, undecided here.
    #[serde(rename = "SEP_or_BOUND")]
    SepOrBound,
    /// PPT but certified entangled by a caller-supplied witness.
    #[serde(rename = "PPT_ENT")]
    PptEnt,
    /// NPT (hence entangled) but useless for dense coding.
    #[serde(rename = "NPT_NONDC")]
    NptNonDc,
    /// Dense-codeable.
    #[serde(rename = "DC")]
    Dc,
}

impl ClassLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassLabel::Sep => "SEP",
            ClassLabel::SepOrBound => "SEP_or_BOUND",
            ClassLabel::PptEnt => "PPT_ENT",
            ClassLabel::NptNonDc => "NPT_NONDC",
            ClassLabel::Dc => "DC",
        }
    }

    /// Whether the label certifies entanglement.
    pub fn certifies_entanglement(&self) -> bool {
        matches!(self, ClassLabel::PptEnt | ClassLabel::NptNonDc | ClassLabel::Dc)
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-criterion verdicts plus the final shell label.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub ppt: CriterionVerdict,
    pub majorization: CriterionVerdict,
    pub entropy: CriterionVerdict,
    /// S(ρ_B) − S(ρ) in bits.
    pub dc_advantage: f64,
    /// Reported capacity max(C⁽¹⁾, log₂ d_A) in bits.
    pub capacity: f64,
    /// Raw closed-form one-capacity C⁽¹⁾ in bits.
    pub one_capacity: f64,
    pub class_label: ClassLabel,
}

/// Runs every criterion at tolerance 1e-9 and assigns the shell label.
pub fn classify(rho: &DensityMatrix) -> ClassificationReport {
    classify_with(rho, linalg::DEFAULT_TOL, &[])
}

/// Classification with an explicit tolerance and optional witnesses. A PPT
/// state in dimensions where the PPT test is inconclusive is upgraded from
/// `SepOrBound` to `PptEnt` only if some supplied witness goes negative.
pub fn classify_with(rho: &DensityMatrix, tol: f64, witnesses: &[Witness]) -> ClassificationReport {
    let ppt = criteria::ppt_test(rho, tol);
    let majorization = criteria::majorization_test(rho, tol);
    let entropy = criteria::entropy_test(rho, tol);
    let advantage = dc_advantage(rho);

    let class_label = if advantage > DC_THRESHOLD && ppt.violated {
        ClassLabel::Dc
    } else if ppt.violated {
        ClassLabel::NptNonDc
    } else if ppt_conclusive_dims(rho.dims()) {
        ClassLabel::Sep
    } else {
        let witnessed = witnesses
            .iter()
            .any(|w| matches!(witness_value(w, rho), Ok(v) if v < -tol));
        if witnessed {
            ClassLabel::PptEnt
        } else {
            ClassLabel::SepOrBound
        }
    };

    ClassificationReport {
        ppt,
        majorization,
        entropy,
        dc_advantage: advantage,
        capacity: reported_capacity(rho),
        one_capacity: dc_capacity(rho),
        class_label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::shannon_entropy;
    use crate::linalg::{conjugate_by, kron, BipartiteDims};
    use crate::states::{
        projector, random_density, random_pure, random_separable, random_unitary, werner,
        PureState,
    };
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn singlet() -> DensityMatrix {
        projector(&bell_state(BellKind::PsiMinus))
    }

    fn dims22() -> BipartiteDims {
        BipartiteDims::new(2, 2).unwrap()
    }

    #[test]
    fn holevo_of_single_state_is_zero() {
        let ens = Ensemble::new(vec![1.0], vec![singlet()]).unwrap();
        assert!(holevo_chi(&ens).abs() < 1e-12);
    }

    #[test]
    fn holevo_of_bell_ensemble_is_two_bits() {
        let states: Vec<_> = BellKind::ALL
            .iter()
            .map(|k| projector(&bell_state(*k)))
            .collect();
        let ens = Ensemble::new(vec![0.25; 4], states).unwrap();
        assert!((holevo_chi(&ens) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn holevo_of_classical_bit_is_one_bit() {
        let dims = BipartiteDims::new(1, 2).unwrap();
        let zero = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
            dims,
        )
        .unwrap();
        let one = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]).unwrap(),
            dims,
        )
        .unwrap();
        let ens = Ensemble::new(vec![0.5, 0.5], vec![zero, one]).unwrap();
        assert!((holevo_chi(&ens) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_validation() {
        assert!(Ensemble::new(vec![0.5, 0.6], vec![singlet(), singlet()]).is_err());
        assert!(Ensemble::new(vec![1.0], vec![]).is_err());
    }

    #[test]
    fn capacity_of_singlet_is_two_bits() {
        let c = dc_capacity(&singlet());
        assert!((c - 2.0).abs() < 1e-12);
        assert!((reported_capacity(&singlet()) - 2.0).abs() < 1e-12);
        assert!(is_dc(&singlet()));
    }

    #[test]
    fn capacity_of_maximally_mixed_floors_at_baseline() {
        let mixed =
            DensityMatrix::new(ComplexMatrix::identity(4).scaled_re(0.25), dims22()).unwrap();
        assert!(dc_capacity(&mixed).abs() < 1e-12);
        assert!((reported_capacity(&mixed) - 1.0).abs() < 1e-12);
        assert!(!is_dc(&mixed));
    }

    #[test]
    fn werner_capacity_threshold() {
        // spectrum {(1+3p)/4, (1−p)/4 ×3}: the advantage crosses zero where
        // that spectrum's entropy hits 1 bit
        let spectrum_entropy = |p: f64| {
            shannon_entropy(&[(1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0])
                .unwrap()
        };
        let (mut lo, mut hi) = (0.5, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if spectrum_entropy(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p_star = 0.5 * (lo + hi);
        assert!((p_star - 0.7476).abs() < 1e-3, "threshold moved: {p_star}");

        for p in [0.3, 0.6, 0.74, 0.76, 0.9, 1.0] {
            let rho = werner(p).unwrap();
            assert!((dc_capacity(&rho) - (2.0 - spectrum_entropy(p))).abs() < 1e-10);
            assert_eq!(is_dc(&rho), p > p_star, "p={p}");
        }
    }

    #[test]
    fn separable_and_ppt_states_are_never_dc() {
        let mut rng = ChaCha12Rng::seed_from_u64(167);
        for _ in 0..50 {
            let rho = random_separable(dims22(), 16, &mut rng).unwrap();
            assert!(!is_dc(&rho));
        }
        for p in [0.0, 0.2, 1.0 / 3.0] {
            assert!(!is_dc(&werner(p).unwrap()));
        }
    }

    #[test]
    fn pauli_encoding_of_singlet_gives_bell_ensemble() {
        let ens = pauli_encoding_ensemble(&singlet()).unwrap();
        assert_eq!(ens.states().len(), 4);
        // encoded states are the four Bell projectors (I fixes ψ⁻, σ_z gives
        // ψ⁺, σ_x gives φ⁻, σ_y gives φ⁺)
        let expected = [
            BellKind::PsiMinus,
            BellKind::PhiMinus,
            BellKind::PhiPlus,
            BellKind::PsiPlus,
        ];
        for (state, kind) in ens.states().iter().zip(expected) {
            let target = projector(&bell_state(kind));
            assert!(
                (state.mat() - target.mat()).max_norm() < 1e-12,
                "wrong encoded state for {kind:?}"
            );
        }
        assert!((holevo_chi(&ens) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_encoding_average_is_product_of_mixed_and_reduced() {
        let mut rng = ChaCha12Rng::seed_from_u64(173);
        for _ in 0..20 {
            let rho = random_density(dims22(), 4, &mut rng).unwrap();
            let ens = pauli_encoding_ensemble(&rho).unwrap();
            let avg = ens.average_state();
            let expected = kron(
                &ComplexMatrix::identity(2).scaled_re(0.5),
                &rho.reduced(Subsystem::B),
            )
            .unwrap();
            assert!((&avg - &expected).max_norm() < 1e-10);
        }
    }

    #[test]
    fn pauli_encoding_achieves_the_capacity() {
        let mut rng = ChaCha12Rng::seed_from_u64(179);
        for _ in 0..50 {
            let rank = 1 + (rng.random::<u32>() as usize) % 4;
            let rho = random_density(dims22(), rank, &mut rng).unwrap();
            let chi = holevo_chi(&pauli_encoding_ensemble(&rho).unwrap());
            assert!((chi - dc_capacity(&rho)).abs() < 1e-9);
        }
    }

    #[test]
    fn pauli_encoding_requires_qubit_sender() {
        let mut rng = ChaCha12Rng::seed_from_u64(181);
        let rho = random_density(BipartiteDims::new(3, 2).unwrap(), 2, &mut rng).unwrap();
        assert!(matches!(
            pauli_encoding_ensemble(&rho),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn no_unitary_encoding_beats_the_closed_form() {
        // χ of any unitary encoding is at most C⁽¹⁾
        let mut rng = ChaCha12Rng::seed_from_u64(191);
        for _ in 0..10 {
            let rho = random_density(dims22(), 3, &mut rng).unwrap();
            let cap = dc_capacity(&rho);
            let m = 3 + (rng.random::<u32>() as usize) % 4;
            let mut probs: Vec<f64> = (0..m).map(|_| rng.random::<f64>() + 0.1).collect();
            let total: f64 = probs.iter().sum();
            for p in &mut probs {
                *p /= total;
            }
            let states: Vec<_> = (0..m)
                .map(|_| {
                    let u = kron(&random_unitary(2, &mut rng), &ComplexMatrix::identity(2))
                        .unwrap();
                    DensityMatrix::new(conjugate_by(rho.mat(), &u), dims22()).unwrap()
                })
                .collect();
            let ens = Ensemble::new(probs, states).unwrap();
            assert!(dc_capacity(&rho) >= holevo_chi(&ens) - 1e-9, "cap {cap}");
        }
    }

    #[test]
    fn capacity_is_invariant_under_local_unitaries() {
        let mut rng = ChaCha12Rng::seed_from_u64(193);
        for _ in 0..10 {
            let rho = random_density(dims22(), 3, &mut rng).unwrap();
            let u = kron(&random_unitary(2, &mut rng), &random_unitary(2, &mut rng)).unwrap();
            let rotated = DensityMatrix::new(conjugate_by(rho.mat(), &u), dims22()).unwrap();
            assert!((dc_capacity(&rho) - dc_capacity(&rotated)).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_state_capacity_links_to_schmidt_spectrum() {
        // C⁽¹⁾ = log₂ d_A + H(squared Schmidt coefficients) for pure states
        let mut rng = ChaCha12Rng::seed_from_u64(197);
        for _ in 0..20 {
            let psi = random_pure(dims22(), &mut rng);
            let rho = projector(&psi);
            let squared: Vec<f64> = crate::criteria::schmidt(&psi)
                .unwrap()
                .coefficients()
                .iter()
                .map(|a| a * a)
                .collect();
            let expected = 1.0 + shannon_entropy(&squared).unwrap();
            assert!((dc_capacity(&rho) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn protocol_decodes_every_message() {
        for message in 0..4 {
            assert_eq!(simulate_protocol(message).unwrap(), message);
        }
        assert!(matches!(simulate_protocol(4), Err(Error::Domain(_))));
    }

    #[test]
    fn classify_named_states() {
        assert_eq!(classify(&singlet()).class_label, ClassLabel::Dc);
        assert_eq!(classify(&werner(0.2).unwrap()).class_label, ClassLabel::Sep);
        assert_eq!(
            classify(&werner(0.5).unwrap()).class_label,
            ClassLabel::NptNonDc
        );
        assert_eq!(classify(&werner(0.9).unwrap()).class_label, ClassLabel::Dc);

        let report = classify(&singlet());
        assert!(report.ppt.violated);
        assert!((report.capacity - 2.0).abs() < 1e-12);
        assert!((report.dc_advantage - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classify_ppt_in_higher_dims_stays_undecided() {
        // 3⊗3 PPT states stay undecided unless a witness certifies them
        let mut rng = ChaCha12Rng::seed_from_u64(199);
        let dims = BipartiteDims::new(3, 3).unwrap();
        let rho = random_separable(dims, 8, &mut rng).unwrap();
        let report = classify(&rho);
        assert_eq!(report.class_label, ClassLabel::SepOrBound);
    }

    #[test]
    fn classify_shells_are_consistent() {
        // DC ⇒ NPT ⇒ entangled, and labels are mutually exclusive
        let mut rng = ChaCha12Rng::seed_from_u64(211);
        for _ in 0..200 {
            let pick = rng.random::<u32>() % 3;
            let rho = match pick {
                0 => random_separable(dims22(), 16, &mut rng).unwrap(),
                1 => {
                    let rank = 1 + (rng.random::<u32>() as usize) % 4;
                    random_density(dims22(), rank, &mut rng).unwrap()
                }
                _ => werner(rng.random::<f64>()).unwrap(),
            };
            let report = classify(&rho);
            match report.class_label {
                ClassLabel::Dc => {
                    assert!(report.ppt.violated);
                    assert!(report.dc_advantage > 0.0);
                }
                ClassLabel::NptNonDc => {
                    assert!(report.ppt.violated);
                    assert!(report.dc_advantage <= DC_THRESHOLD);
                }
                ClassLabel::Sep | ClassLabel::SepOrBound => {
                    assert!(!report.ppt.violated);
                    assert!(!is_dc(&rho));
                }
                ClassLabel::PptEnt => unreachable!("no witness supplied"),
            }
        }
    }

    #[test]
    fn classify_with_witness_upgrades_ppt_shell() {
        // a witness that goes negative on a PPT state flips SepOrBound to
        // PptEnt; fake it with the trivially negative −I on a 3⊗3 separable
        // state to exercise the plumbing (real nd-witness construction is out
        // of scope)
        let dims = BipartiteDims::new(3, 3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(223);
        let rho = random_separable(dims, 8, &mut rng).unwrap();
        let w = Witness::new(ComplexMatrix::identity(9).scaled_re(-1.0), dims).unwrap();
        let report = classify_with(&rho, 1e-9, &[w]);
        assert_eq!(report.class_label, ClassLabel::PptEnt);
    }

    #[test]
    fn pure_entangled_state_amplitudes_classify_dc() {
        let norm = (0.8f64 * 0.8 + 0.6 * 0.6).sqrt();
        let psi = PureState::new(
            vec![
                Complex64::new(0.8 / norm, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(0.6 / norm, 0.0),
            ],
            dims22(),
        )
        .unwrap();
        let report = classify(&projector(&psi));
        assert_eq!(report.class_label, ClassLabel::Dc);
    }
}
