use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown tensor factor `{0}`")]
    UnknownFactor(String),

    #[error("duplicate tensor factor `{0}`")]
    DuplicateFactor(String),

    #[error("matrix is not Hermitian (max |A - A^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("eigendecomposition did not converge")]
    EigenFailure,

    #[error("density matrix has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("partial trace needs at least one kept factor")]
    EmptyKeep,

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("empty sweep grid")]
    EmptyGrid,

    #[error("parity classification failed for level {level}: |<P>| = {value:.6}")]
    ParityClassification { level: usize, value: f64 },

    #[error("unknown state label `{0}`")]
    UnknownState(String),

    #[error(
        "near resonance: qubit {qubit} detuning from QRS transition {upper}->{lower} is {detuning:e}"
    )]
    NearResonance {
        qubit: usize,
        lower: usize,
        upper: usize,
        detuning: f64,
    },

    #[error("invalid rate for channel `{channel}`: {reason}")]
    InvalidRate { channel: String, reason: String },

    #[error("steady state is not unique: {count} eigenvalues within {tol:e} of zero")]
    DegenerateSteadyState { count: usize, tol: f64 },

    #[error("no steady state: residual {residual:e} exceeds {tol:e}")]
    NoSteadyState { residual: f64, tol: f64 },

    #[error("trace drift {drift:e} exceeds tolerance {tol:e}")]
    TraceDrift { drift: f64, tol: f64 },
}

impl Error {
    /// Failures of numerical convergence rather than of the physical setup.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::EigenFailure
                | Error::NoSteadyState { .. }
                | Error::TraceDrift { .. }
                | Error::ParityClassification { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
