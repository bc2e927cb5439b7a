use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,

    #[error("{context}: entry count {found} does not match {expected}")]
    EntryCount {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{context}: non-finite entry encountered")]
    NonFinite { context: &'static str },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not unitary: deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("vectors are not orthonormal: deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotOrthonormal { deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "eigendecomposition did not converge for dim {dim} (max |entry| {max_abs:.3e}, \
         {iterations} iterations allowed)"
    )]
    EigenNonConvergence {
        dim: usize,
        max_abs: f64,
        iterations: usize,
    },

    #[error("SVD did not converge for a {rows}x{cols} matrix")]
    SvdNonConvergence { rows: usize, cols: usize },

    #[error("tolerance must be positive, got {value}")]
    NonPositiveTolerance { value: f64 },

    #[error("degenerate subspace must have dimension >= 2, got {dim}")]
    SubspaceTooSmall { dim: usize },

    #[error(
        "operator fails the symmetry precondition: square residual {square_residual:.3e}, \
         commutator residual {commutator_residual:.3e} (both must be <= {tolerance:.3e})"
    )]
    SymmetryPrecondition {
        square_residual: f64,
        commutator_residual: f64,
        tolerance: f64,
    },

    #[error("unknown model `{name}`; known models: {known}")]
    UnknownModel { name: String, known: String },

    #[error("parameter point has {found} coordinates, model expects {expected}")]
    ParamDimension { expected: usize, found: usize },

    #[error("parameter {value} on axis {axis} lies outside [{lo}, {hi}]")]
    OutsideParamBox {
        axis: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("grid resolution on axis {axis} must be >= 2, got {value}")]
    ResolutionTooCoarse { axis: usize, value: usize },

    #[error("grid scans support at most 3 parameters, model has {dim}")]
    GridDimension { dim: usize },

    #[error(
        "gap minimization exhausted its budget of {evaluations} evaluations: \
         best gap {best_gap:.6e} at {best_alpha:?}"
    )]
    RefineFailed {
        best_alpha: Vec<f64>,
        best_gap: f64,
        evaluations: usize,
    },

    #[error("expected a {expected}x{expected} matrix, found {found}x{found}")]
    WrongMatrixDim { expected: usize, found: usize },

    #[error("frozen axis {axis} out of range for a model with {dim} parameters")]
    FrozenAxis { axis: usize, dim: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
