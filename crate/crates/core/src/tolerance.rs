//! Named numerical tolerances.
//!
//! The constants are the defaults; [`Tolerances`] bundles them so callers
//! (and the CLI) can override individual values.

/// Allowed `|M[i][j] − conj(M[j][i])|` for a matrix treated as Hermitian.
pub const HERMITIAN: f64 = 1e-12;
/// Jacobi stops when the off-diagonal Frobenius norm drops below this times `‖M‖_F`.
pub const JACOBI_REL_OFF: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Vectors shorter than this are dropped when building projectors.
pub const VECTOR_DROP: f64 = 1e-12;
/// Partial-transpose eigenvalues below `-PPT` count as negative.
pub const PPT: f64 = 1e-10;
/// Eigenvalues above this count towards the rank.
pub const RANK: f64 = 1e-8;
/// Parameters with magnitude below this are treated as zero.
pub const GENERIC: f64 = 1e-12;
/// Relative tolerance for the degeneracy tests `mc = bs` and `b̄t = n̄d`.
pub const DEGENERACY_REL: f64 = 1e-10;
/// Search residuals at or below this mean a product vector was found in the range.
pub const SEARCH_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub jacobi_rel_off: f64,
    pub jacobi_max_sweeps: usize,
    pub vector_drop: f64,
    pub ppt: f64,
    pub rank: f64,
    pub generic: f64,
    pub degeneracy_rel: f64,
    pub search_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN,
            jacobi_rel_off: JACOBI_REL_OFF,
            jacobi_max_sweeps: JACOBI_MAX_SWEEPS,
            vector_drop: VECTOR_DROP,
            ppt: PPT,
            rank: RANK,
            generic: GENERIC,
            degeneracy_rel: DEGENERACY_REL,
            search_residual: SEARCH_RESIDUAL,
        }
    }
}
