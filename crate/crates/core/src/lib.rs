//! Chessboard bound-entangled states on a 3×3 bipartite system.
//!
//! The crate builds the 9×9 density matrices of the chessboard family from
//! eight (generally complex) parameters, checks their structure and the
//! positivity of their partial transpose, and certifies inseparability with
//! the range criterion: analytically, and with a numerical search for a
//! product vector inside the range.
//!
//! # Index convention
//!
//! A basis state `|m⟩ ⊗ |μ⟩` of the two qutrits (first subsystem index `m`,
//! second `μ`) sits at linear index
//!
//! ```text
//! i = m + 3·μ
//! ```
//!
//! so the first-subsystem index varies fastest and components are listed in
//! the order `00, 10, 20; 01, 11, 21; 02, 12, 22`. Every module uses this
//! convention; [`linalg::product_vector`] and [`linalg::local_operator`] are
//! the only places that translate it into Kronecker products.
//!
//! # Modules
//!
//! - [`linalg`]: small dense complex matrices, partial transpose, Jacobi
//!   eigensolver, projectors.
//! - [`chessboard`]: parameters, gauge canonicalization, state construction
//!   and the two PPT sub-families.
//! - [`criteria`]: PPT test, range criterion, product-vector search and the
//!   combined certification report.
//! - [`sampling`]: seeded parameter draws.
//! - [`cli`]: the `boundent` command-line front end and its file formats.

pub mod chessboard;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod sampling;
pub mod tolerance;

pub use chessboard::{
    build_rho, build_vectors, canonicalize, family_a, family_b, invariants, CanonicalParams,
    GaugeTransform, RawParams, StateMatrix,
};
pub use criteria::{
    certify, certify_raw, degenerate_witness, ppt_min_eigenvalue, product_in_range_search,
    range_analytic, CertificationReport, RangeCondition, RangeSearchConfig, SearchOutcome,
    Verdict, VerdictKind,
};
pub use error::{Error, Result};
pub use linalg::{hermitian_eigen, kron, partial_transpose_first, HermitianEigenResult, MatrixC};
pub use tolerance::Tolerances;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Local dimension of each subsystem.
pub const QUTRIT: usize = 3;
/// Dimension of the joint 3×3 space.
pub const DIM: usize = QUTRIT * QUTRIT;
