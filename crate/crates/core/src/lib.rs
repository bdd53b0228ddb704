//! Entanglement and squeezing analysis of three-qubit states treated as
//! truncated three-mode bosonic systems.
//!
//! The library computes two-mode and bipartition negativities (with the
//! geometric-mean tripartite negativity), two- and three-mode principal
//! squeeze variances (numerically from operator moments and analytically
//! from per-family closed forms), classifies states into the type I/II/III
//! taxonomy, and drives reproducible Monte-Carlo scans, extremal searches,
//! and dataset generation through the `trimode` CLI.
//!
//! Basis convention: |abc> maps to index 4a + 2b + c with mode `i` the most
//! significant bit. Negativities use the -2 * sum-of-negative-eigenvalues
//! normalization, so a Bell pair scores exactly 1.
//!
//! ```
//! use trimode::{pure_density, tripartite_negativity, squeeze_report, StateVector};
//!
//! let rho = pure_density(&StateVector::ghz());
//! let ent = tripartite_negativity(&rho)?;
//! assert!((ent.n_ijk - 1.0).abs() < 1e-9);
//! assert_eq!(ent.n_jk, 0.0);
//!
//! let sq = squeeze_report(&rho)?;
//! assert!((sq.lambda_ijk - 6.0).abs() < 1e-9); // far above the SQL of 3
//! # Ok::<(), trimode::Error>(())
//! ```

pub use num_complex;

pub mod classify;
pub mod entanglement;
pub mod error;
pub mod families;
pub mod figures;
pub mod linalg;
pub mod scan;
pub mod search;
pub mod squeezing;
pub mod table;
pub mod verify;

pub use classify::{classify_report, classify_state, Major, StateClass, Subtype};
pub use entanglement::{
    negativity_bipartition, negativity_pair, tripartite_negativity, EntanglementReport,
    ZERO_NEGATIVITY_EPS,
};
pub use error::{Error, Result};
pub use families::{
    build_state, pure_density, sample_family, sample_family_with_pivot, AmplitudeMode, Family,
    FamilySpec, Measure, SamplerConfig, StateVector,
};
pub use linalg::{
    apply_mode_operator, eigen_hermitian, eigen_hermitian_with_vectors, partial_trace,
    partial_transpose, ComplexMatrix, EigenResult, LadderOp, Mode,
};
pub use squeezing::{
    compute_moments, lambda_closed_form, lambda_three_mode, lambda_two_mode,
    quadrature_variance_at, quadrature_variance_scan, squeeze_report, MomentTable, SqueezeReport,
};
