//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    // ---- linear algebra ----
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    BadEntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },

    #[error("tolerance must satisfy 0 <= eps < 1, got {eps}")]
    BadTolerance { eps: f64 },

    #[error("state vector has (near-)zero norm")]
    ZeroNorm,

    #[error("state vector is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("basis is not orthonormal: gram deviation {deviation:.3e} at pair ({i}, {j})")]
    NotOrthonormal { i: usize, j: usize, deviation: f64 },

    #[error("empty basis has no ambient dimension")]
    EmptyBasis,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    // ---- group structure ----
    #[error("cayley table is not square ({rows} rows, row {bad_row} has {bad_len} entries)")]
    TableNotSquare {
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },

    #[error("cayley table entry {value} at ({row}, {col}) out of range for order {order}")]
    TableEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("cayley table has no two-sided identity element")]
    MissingIdentity,

    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },

    #[error("multiplication not associative at triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("order {order} exceeds the associativity-check limit {limit}; use from_cayley_table_trusted")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("unsupported group construction: {reason}")]
    UnsupportedGroup { reason: String },

    #[error("subset member {member} out of range for group of order {order}")]
    SubsetOutOfRange { member: usize, order: usize },

    #[error("subset has duplicate member {member}")]
    DuplicateMember { member: usize },

    #[error("subset is not a subgroup: {reason}")]
    NotASubgroup { reason: String },

    // ---- representations ----
    #[error("expected {expected} matrices (one per group element), got {got}")]
    WrongMatrixCount { expected: usize, got: usize },

    #[error("matrix for element {element} is not unitary: residual {residual:.3e}")]
    NotUnitary { element: usize, residual: f64 },

    #[error(
        "identity-element matrix is not a phase multiple of the identity: residual {residual:.3e}"
    )]
    BadIdentityMatrix { residual: f64 },

    #[error(
        "cocycle phase undefined for pair ({g}, {h}): |trace| = {magnitude:.6e} below {required:.6e} \
         (matrices are not phase multiples)"
    )]
    CocycleUndefined {
        g: usize,
        h: usize,
        magnitude: f64,
        required: f64,
    },

    #[error("cocycle residual {residual:.3e} exceeds tolerance for pair ({g}, {h})")]
    CocycleResidual { g: usize, h: usize, residual: f64 },

    // ---- graph / subspaces ----
    #[error("identity component disagrees with the connect-set closure: {details}")]
    IdentityComponentMismatch { details: String },

    #[error(
        "subspace projectors {label_a} and {label_b} are not orthogonal: residual {residual:.3e}"
    )]
    SubspacesNotOrthogonal {
        label_a: String,
        label_b: String,
        residual: f64,
    },

    #[error("invalid density operator: {reason}")]
    InvalidDensity { reason: String },

    // ---- channels ----
    #[error("kraus operators are not trace preserving: residual {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("channel needs at least one kraus operator")]
    EmptyKraus,

    #[error("choi matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    ChoiNotPositive { min_eigenvalue: f64 },

    // ---- estimation ----
    #[error("povm seed operator is not self-adjoint: residual {residual:.3e}")]
    SeedNotHermitian { residual: f64 },

    #[error(
        "povm seed operator is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}"
    )]
    SeedNotPositive { min_eigenvalue: f64 },

    #[error("reduced state for secret {secret} does not match the subgroup orbit state {h}: overlap {overlap:.6}")]
    ReductionMismatch {
        secret: usize,
        h: usize,
        overlap: f64,
    },

    #[error("povm is incomplete: residual {residual:.3e}")]
    PovmIncomplete { residual: f64 },

    #[error("cost table violates left invariance at (h={h}, ghat={ghat}, g={g})")]
    CostNotLeftInvariant { h: usize, ghat: usize, g: usize },

    #[error("no subspace captures the orbit state for element {element}: best norm^2 = {best_norm_sq:.6}")]
    NoCapturingSubspace { element: usize, best_norm_sq: f64 },

    #[error("compressed matrix for element {element} is not unitary: residual {residual:.3e}")]
    ReducedNotUnitary { element: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
