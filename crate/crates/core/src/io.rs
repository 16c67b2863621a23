//! On-disk state files and the machine-readable report format used by the
//! command-line front end.
//!
//! State files are human-writable JSON with explicit `[re, im]` pairs and
//! full round-trip float precision, so generating a state and reading it
//! back reproduces the in-memory matrix bit for bit. Reports round every
//! float to 12 significant digits and keep a stable key order, which makes
//! them suitable for golden-file comparisons.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::CriterionVerdict;
use crate::error::{Error, Result};
use crate::linalg::BipartiteDims;
use crate::states::{DensityMatrix, PureState};

// ── State files ──────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    #[default]
    Density,
    Pure,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Serialized quantum state: bipartite dimensions plus either a row-major
/// density matrix of `[re, im]` pairs or, for `kind = "pure"`, an amplitude
/// vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default)]
    pub kind: StateKind,
    pub dims: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// A successfully parsed state file.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Density(DensityMatrix),
    Pure(PureState),
}

impl LoadedState {
    /// Density-matrix view; a pure state becomes its projector.
    pub fn into_density(self) -> DensityMatrix {
        match self {
            LoadedState::Density(rho) => rho,
            LoadedState::Pure(psi) => crate::states::projector(&psi),
        }
    }

    pub fn dims(&self) -> BipartiteDims {
        match self {
            LoadedState::Density(rho) => rho.dims(),
            LoadedState::Pure(psi) => psi.dims(),
        }
    }
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix, metadata: Option<Metadata>) -> Self {
        let n = rho.dims().total();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = rho.mat()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self {
            kind: StateKind::Density,
            dims: [rho.dims().d_a(), rho.dims().d_b()],
            matrix: Some(matrix),
            amplitudes: None,
            metadata,
        }
    }

    pub fn from_pure(psi: &PureState, metadata: Option<Metadata>) -> Self {
        Self {
            kind: StateKind::Pure,
            dims: [psi.dims().d_a(), psi.dims().d_b()],
            matrix: None,
            amplitudes: Some(psi.amplitudes().iter().map(|z| [z.re, z.im]).collect()),
            metadata,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Validation(format!("cannot read {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            Error::Validation(format!("{} is not a valid state file: {e}", path.display()))
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Validation(format!("serialization failed: {e}")))?;
        std::fs::write(path, text + "\n").map_err(|e| {
            Error::Validation(format!("cannot write {}: {e}", path.display()))
        })
    }

    /// Validates and converts to an in-memory state.
    pub fn to_state(&self) -> Result<LoadedState> {
        let dims = BipartiteDims::new(self.dims[0], self.dims[1])?;
        match self.kind {
            StateKind::Density => {
                let rows = self.matrix.as_ref().ok_or_else(|| {
                    Error::Validation("kind \"density\" requires a \"matrix\" field".into())
                })?;
                let n = dims.total();
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Validation(format!(
                        "matrix must be {n}x{n} for dims {dims}"
                    )));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                let mat = crate::linalg::ComplexMatrix::new(n, n, entries)?;
                Ok(LoadedState::Density(DensityMatrix::new(mat, dims)?))
            }
            StateKind::Pure => {
                let amps = self.amplitudes.as_ref().ok_or_else(|| {
                    Error::Validation("kind \"pure\" requires an \"amplitudes\" field".into())
                })?;
                let vec = amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                Ok(LoadedState::Pure(PureState::new(vec, dims)?))
            }
        }
    }
}

// ── Reports ──────────────────────────────────────────────────────────────────

/// Rounds to 12 significant digits so report output is printer-independent.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor();
    let factor = 10f64.powf(11.0 - magnitude);
    (x * factor).round() / factor
}

/// Formats a float with 12 significant digits.
pub fn fmt_sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionEntry {
    pub name: String,
    pub margin: f64,
    pub violated: bool,
    pub conclusive_for_entanglement: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub separable_certified: bool,
}

impl From<&CriterionVerdict> for CriterionEntry {
    fn from(v: &CriterionVerdict) -> Self {
        Self {
            name: v.criterion.to_string(),
            margin: sig12(v.margin),
            violated: v.violated,
            conclusive_for_entanglement: v.conclusive_for_entanglement,
            separable_certified: v.separable_certified,
        }
    }
}

/// Machine-readable command output. Field order is the serialization order,
/// so the schema is stable. The `exit_code` field always matches the process
/// exit status: 0 separable-certified or undetermined, 1 entangled-certified,
/// 2 input or validation error.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub dims: [usize; 2],
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_capacity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dc_advantage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chsh_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_coefficients: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_bits: Option<f64>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, input: Option<String>, dims: BipartiteDims, tolerance: f64) -> Self {
        Self {
            tool: "entsep",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input,
            dims: [dims.d_a(), dims.d_b()],
            tolerance,
            seed: None,
            restarts: None,
            criteria: Vec::new(),
            class_label: None,
            capacity: None,
            one_capacity: None,
            dc_advantage: None,
            chsh_max: None,
            witness_values: None,
            schmidt_cutoff: None,
            schmidt_coefficients: None,
            entropy_bits: None,
            exit_code: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, projector, random_density, random_pure, werner, BellKind};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn prop_density_files_round_trip_bit_for_bit(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
            let dims = BipartiteDims::new(da, db).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let rank = 1 + (seed as usize) % dims.total();
            let rho = random_density(dims, rank, &mut rng).unwrap();
            let text = serde_json::to_string(&StateFile::from_density(&rho, None)).unwrap();
            let parsed: StateFile = serde_json::from_str(&text).unwrap();
            let loaded = parsed.to_state().unwrap().into_density();
            prop_assert_eq!(rho.mat().entries(), loaded.mat().entries());
        }

        #[test]
        fn prop_pure_files_round_trip_bit_for_bit(seed in any::<u64>()) {
            let dims = BipartiteDims::new(3, 2).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let psi = random_pure(dims, &mut rng);
            let text = serde_json::to_string(&StateFile::from_pure(&psi, None)).unwrap();
            let parsed: StateFile = serde_json::from_str(&text).unwrap();
            match parsed.to_state().unwrap() {
                LoadedState::Pure(loaded) => prop_assert_eq!(psi.amplitudes(), loaded.amplitudes()),
                _ => prop_assert!(false, "expected a pure state"),
            }
        }
    }

    #[test]
    fn state_file_round_trips_density_bit_for_bit() {
        let rho = werner(0.37).unwrap();
        let file = StateFile::from_density(&rho, None);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: StateFile = serde_json::from_str(&text).unwrap();
        let loaded = parsed.to_state().unwrap().into_density();
        assert_eq!(rho.mat().entries(), loaded.mat().entries());
    }

    #[test]
    fn state_file_round_trips_pure_states() {
        let psi = bell_state(BellKind::PsiMinus);
        let file = StateFile::from_pure(&psi, None);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: StateFile = serde_json::from_str(&text).unwrap();
        match parsed.to_state().unwrap() {
            LoadedState::Pure(loaded) => {
                assert_eq!(psi.amplitudes(), loaded.amplitudes());
            }
            _ => panic!("expected a pure state"),
        }
    }

    #[test]
    fn invalid_state_files_are_rejected_with_the_invariant_named() {
        let mut file = StateFile::from_density(&werner(0.5).unwrap(), None);
        file.matrix.as_mut().unwrap()[0][0] = [0.9, 0.0];
        let err = file.to_state().unwrap_err();
        assert!(err.to_string().contains("trace"), "got: {err}");

        let missing = StateFile {
            kind: StateKind::Density,
            dims: [2, 2],
            matrix: None,
            amplitudes: None,
            metadata: None,
        };
        assert!(missing.to_state().is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)] // the truncated literal is the expected value
    fn sig12_keeps_twelve_digits() {
        assert_eq!(sig12(2.0f64.sqrt()), 1.41421356237);
        assert_eq!(sig12(-0.5), -0.5);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(123456789.0), 123456789.0);
    }

    #[test]
    fn report_serialization_is_stable() {
        let rho = projector(&bell_state(BellKind::PsiMinus));
        let mut report = Report::new("classify", Some("x.json".into()), rho.dims(), 1e-9);
        report.class_label = Some("DC".into());
        report.exit_code = 1;
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&report).unwrap();
        assert_eq!(a, b);
        assert!(a.find("\"tool\"").unwrap() < a.find("\"version\"").unwrap());
        assert!(a.find("\"version\"").unwrap() < a.find("\"exit_code\"").unwrap());
    }
}
