//! Finite-truncation numerical verification: dense complex matrices, a
//! cyclic Jacobi eigensolver for Hermitian matrices, operator norms, the
//! modulus `|T|` and polar factorization, restricted subspace norms,
//! truncation studies, and seeded randomized property suites.
//!
//! Everything upstream of this module is exact rational arithmetic; here
//! values embed into `f64` once and every claim carries an explicit
//! tolerance, fixed by the constants below.

pub mod eigen;
pub mod matrix;
pub mod subspace;
pub mod suites;
pub mod truncation;

pub use eigen::{absolute_value, operator_norm, polar, sym_eigen, Eigen};
pub use matrix::{fmt_e, parse_matrix_csv, write_matrix_csv, DenseMatrix};
pub use subspace::{gram_schmidt, restricted_norm, SubspaceBasis};
pub use suites::negative_eigenvalue_count;
pub use truncation::{
    truncation_study_plan, truncation_study_spec, write_truncation_csv, TruncationReport,
};

/// Max entrywise deviation from `A = A*` tolerated by the eigensolver.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Jacobi stops when the off-diagonal Frobenius mass falls to this fraction
/// of the input's Frobenius norm.
pub const CONVERGENCE_RELATIVE_TOLERANCE: f64 = 1e-14;
/// Hard sweep limit for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Required reconstruction quality: `max|AV - VL|` relative to `max|eig|`.
pub const EIGEN_RESIDUAL_RELATIVE_TOLERANCE: f64 = 1e-10;
/// Default bound on `max|V*V - I|` for a subspace basis.
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-10;
/// Columns whose orthogonalized residual falls below this fraction of their
/// original length are rejected as dependent.
pub const DEPENDENT_PIVOT_TOLERANCE: f64 = 1e-12;
/// Eigenvalues above `-PSD_TOLERANCE` count as nonnegative.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Eigenvalues below `-NEGATIVE_THRESHOLD` count as negative.
pub const NEGATIVE_THRESHOLD: f64 = 1e-10;
/// Required polar reconstruction quality relative to the operator norm.
pub const POLAR_RESIDUAL_RELATIVE_TOLERANCE: f64 = 1e-9;
/// Singular values below this fraction of the largest are treated as rank
/// deficiency in the polar factor.
pub const RANK_CUTOFF_RELATIVE: f64 = 1e-10;
/// Default tolerance for reported numeric comparisons.
pub const REPORT_TOLERANCE_DEFAULT: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum NumericError {
    #[error("matrix is not hermitian: max|A - A*| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("eigensolver did not converge: off-diagonal mass {off:.3e} above {threshold:.3e} after {sweeps} sweeps")]
    NoConvergence {
        off: f64,
        threshold: f64,
        sweeps: usize,
    },
    #[error("basis is not orthonormal: max|V*V - I| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotOrthonormal { deviation: f64, tolerance: f64 },
    #[error("input vectors are linearly dependent (column {column})")]
    DependentInput { column: usize },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below -{tolerance:.3e}")]
    NotPsd { eigenvalue: f64, tolerance: f64 },
    #[error("matrix contains a non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix CSV is malformed: {0}")]
    Csv(String),
    #[error("truncation sizes must be a nonempty strictly increasing list")]
    InvalidTruncationList,
    #[error("the spectrum supplies no enumerable truncation values")]
    EmptyTruncation,
}
