use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (residual {residual:.3e} > {tol:.1e})")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("invalid input, violated invariant `{invariant}`: {detail}")]
    Validation { invariant: &'static str, detail: String },

    #[error("states are not orthogonal (|rho1 rho2| = {residual:.3e}); use the nonorthogonal rule")]
    NotOrthogonal { residual: f64 },

    #[error("fiducial projector does not straddle component {index} (overlap {overlap:.3e})")]
    FiducialStraddle { index: usize, overlap: f64 },

    #[error("normalization constant {value:.3e} is too small")]
    DegenerateNormalization { value: f64 },

    #[error("negative radicand {value:.3e} under a square root")]
    NegativeRadicand { value: f64 },

    #[error("state is not pure (purity {purity:.12})")]
    NotPure { purity: f64 },

    #[error("singular or ill-conditioned covariance: {0}")]
    SingularCovariance(String),

    #[error("covariance error: {0}")]
    Covariance(String),

    #[error("nonzero mean vector is not supported by this operation")]
    UnsupportedMean,

    #[error("line outside of the sampled grid: {0}")]
    GridCoverage(String),

    #[error("invalid phase-space point: {0}")]
    InvalidPoint(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension_error",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::Validation { .. } => "validation_error",
            Error::NotOrthogonal { .. } => "not_orthogonal",
            Error::FiducialStraddle { .. } => "fiducial_straddle",
            Error::DegenerateNormalization { .. } => "degenerate_normalization",
            Error::NegativeRadicand { .. } => "negative_radicand",
            Error::NotPure { .. } => "not_pure",
            Error::SingularCovariance(_) => "singular_covariance",
            Error::Covariance(_) => "covariance_error",
            Error::UnsupportedMean => "unsupported_mean",
            Error::GridCoverage(_) => "grid_coverage",
            Error::InvalidPoint(_) => "invalid_point",
            Error::InternalConsistency(_) => "internal_consistency",
        }
    }

    pub(crate) fn validation(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal conditions surfaced alongside a result.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Eigenvalues closer than the degeneracy tolerance were found; the
    /// eigenprojector basis inside each listed group is a deterministic but
    /// arbitrary choice, and the purified state depends on it.
    DegenerateSpectrum { eigenvalues: Vec<f64> },
    /// The kernel-quadrature cross-check deviated from the operator route.
    KernelQuadrature { max_deviation: f64 },
}

impl Warning {
    pub fn code(&self) -> &'static str {
        match self {
            Warning::DegenerateSpectrum { .. } => "degenerate_spectrum",
            Warning::KernelQuadrature { .. } => "kernel_quadrature",
        }
    }
}
