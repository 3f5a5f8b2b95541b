use thiserror::Error;

/// Crate-wide error type. Variants that reject user input map to CLI exit
/// code 2; `Internal` maps to exit code 1.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not homogeneous")]
    NotHomogeneous,
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: u32, got: u32 },
    #[error("cone: mdr = 0")]
    Cone,
    #[error("non-isolated singularities (Jacobian scheme not finite)")]
    NonIsolatedSingularities,
    #[error("positive-dimensional scheme")]
    PositiveDimensional,
    #[error("non-isolated critical locus")]
    NonIsolatedCriticalLocus,
    #[error("Groebner step cap exceeded after {0} pair reductions")]
    StepCapExceeded(u64),
    #[error("saturation step cap exceeded")]
    SaturationCapExceeded,
    #[error("resolution exceeded maximum length {0}")]
    ResolutionTooLong(usize),
    #[error("{0} is not a singular point of the curve")]
    NotSingularPoint(String),
    #[error("hypotheses of the rank criterion not met: {0}")]
    HypothesesNotMet(String),
    #[error("shape hypothesis not met")]
    ShapeHypothesisNotMet,
    #[error("conjecture experiment requires a 3-syzygy curve")]
    NotThreeSyzygy,
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Machine-readable error code for JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::NotHomogeneous => "not_homogeneous",
            Error::DegreeTooSmall { .. } => "degree_too_small",
            Error::Cone => "cone",
            Error::NonIsolatedSingularities => "non_isolated_singularities",
            Error::PositiveDimensional => "positive_dimensional",
            Error::NonIsolatedCriticalLocus => "non_isolated_critical_locus",
            Error::StepCapExceeded(_) => "step_cap_exceeded",
            Error::SaturationCapExceeded => "saturation_cap_exceeded",
            Error::ResolutionTooLong(_) => "resolution_too_long",
            Error::NotSingularPoint(_) => "not_singular_point",
            Error::HypothesesNotMet(_) => "hypotheses_not_met",
            Error::ShapeHypothesisNotMet => "shape_hypothesis_not_met",
            Error::NotThreeSyzygy => "not_three_syzygy",
            Error::InvalidFamilyParams(_) => "invalid_family_params",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }

    /// True for errors caused by bad input rather than an implementation bug.
    pub fn is_rejection(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
