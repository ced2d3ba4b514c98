use thiserror::Error;

use crate::poly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different numbers of variables ({0} vs {1})")]
    MismatchedVariables(usize, usize),
    #[error("expected a {expected} ring element, got {found}")]
    MismatchedRing { expected: &'static str, found: &'static str },
    #[error("degree {degree} outside the admissible range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("the zero polynomial is not admissible here")]
    ZeroPolynomial,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("index {index} outside a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("catalecticant of degree {i} has rank {rank} > {r}: not in the rank locus")]
    NotInRankLocus { r: usize, i: usize, rank: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal chain broken: {0}")]
    InternalChainBroken(String),
    #[error("the polynomial is not in the span of the comparison scheme")]
    SpanViolation,
    #[error("no dehomogenizing linear form found after {0} attempts")]
    NoDehomogenizerFound(usize),
    #[error("the minimal annihilating scheme is not reduced")]
    NotReduced,
    #[error("reducedness of the minimal annihilating scheme could not be decided")]
    Undetermined,
    #[error("linear system for the decomposition coefficients is inconsistent")]
    SolveFailure,
    #[error("operation requires an exact decomposition")]
    ApproximateModeUnsupported,
    #[error("socle degree {0} is even; only odd socle degrees are supported")]
    EvenSocleUnsupported(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MismatchedVariables(..) => "MismatchedVariables",
            Error::MismatchedRing { .. } => "MismatchedRing",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::Parse(_) => "ParseError",
            Error::NotInRankLocus { .. } => "NotInRankLocus",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::InternalChainBroken(_) => "InternalChainBroken",
            Error::SpanViolation => "SpanViolation",
            Error::NoDehomogenizerFound(_) => "NoDehomogenizerFound",
            Error::NotReduced => "NotReducedError",
            Error::Undetermined => "UndeterminedError",
            Error::SolveFailure => "SolveFailure",
            Error::ApproximateModeUnsupported => "ApproximateModeUnsupported",
            Error::EvenSocleUnsupported(_) => "EvenSocleUnsupported",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
