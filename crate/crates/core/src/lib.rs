//! Detection and classification of entanglement in bipartite quantum states.
//!
//! The crate takes a validated density matrix on H_A ⊗ H_B and answers three
//! questions: is it entangled (and which criterion shows it), how useful is
//! it for dense coding, and which shell of the usefulness classification does
//! it land in (`SEP`, `SEP_or_BOUND`, `PPT_ENT`, `NPT_NONDC`, `DC`).
//!
//! Modules, bottom up:
//!
//! - [`linalg`]: dense complex matrices, tensor products, partial
//!   trace/transpose, Hermitian eigendecomposition, SVD.
//! - [`states`]: the validated [`DensityMatrix`] type, Bell and Werner
//!   states, seeded random-state generators.
//! - [`criteria`]: Schmidt decomposition and the partial-transposition,
//!   majorization, and entropy criteria with explicit verdict semantics.
//! - [`witness`]: entanglement witnesses, positive maps, and the
//!   operator ↔ map isomorphism.
//! - [`bell`]: CHSH correlators and numerical maximization of the violation.
//! - [`densecoding`]: Holevo quantity, dense-coding capacity, protocol
//!   simulation, and the shell classification.
//! - [`io`]: the JSON state-file and report formats used by the CLI.
//!
//! ```
//! use entsep::prelude::*;
//!
//! let singlet = projector(&bell_state(BellKind::PsiMinus));
//! let report = classify(&singlet);
//! assert_eq!(report.class_label, ClassLabel::Dc);
//! assert!((report.capacity - 2.0).abs() < 1e-12);
//! ```

pub mod bell;
pub mod criteria;
pub mod densecoding;
pub mod error;
pub mod io;
pub mod linalg;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{BipartiteDims, ComplexMatrix, Spectrum, Subsystem};
pub use states::{BellKind, DensityMatrix, PureState};

/// The types and functions most callers need.
pub mod prelude {
    pub use crate::bell::{chsh_value, maximize_chsh, ChshSetting};
    pub use crate::criteria::{
        entropy_test, majorization_test, ppt_test, schmidt, von_neumann_entropy,
        CriterionVerdict, SchmidtDecomposition,
    };
    pub use crate::densecoding::{
        classify, classify_with, dc_capacity, holevo_chi, is_dc, pauli_encoding_ensemble,
        ClassLabel, ClassificationReport, Ensemble,
    };
    pub use crate::error::{Error, Result};
    pub use crate::linalg::{
        eigh, hs_inner, kron, partial_trace, partial_transpose, svd, BipartiteDims,
        ComplexMatrix, Subsystem,
    };
    pub use crate::states::{
        bell_state, projector, random_density, random_separable, werner, BellKind,
        DensityMatrix, PureState,
    };
    pub use crate::witness::{
        canonical_witness_2x2, decomposable_witness, witness_value, LinearMap, Witness,
    };
}
