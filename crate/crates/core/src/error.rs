use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("denominator must be positive in {0:?}")]
    NonPositiveDenominator(String),
    #[error("rational {0:?} is not in lowest terms")]
    NotLowestTerms(String),
}

/// Which structure-constant invariant a candidate algebra violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Degree,
    Commutativity,
    Associativity,
}

impl std::fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConstraintKind::Degree => "degree",
            ConstraintKind::Commutativity => "commutativity",
            ConstraintKind::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{kind} constraint violated at basis indices {witness:?}")]
    ConstraintViolation {
        kind: ConstraintKind,
        witness: Vec<usize>,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid graded space: {0}")]
    InvalidSpace(String),
    #[error("linear map is not homogeneous of degree {degree}: entry ({row}, {col}) is nonzero")]
    NotHomogeneous { degree: i64, row: usize, col: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("correlator family truncation exceeded: {0}")]
    TruncationExceeded(String),
    #[error("exponential does not terminate: {0}")]
    NotNilpotent(String),
    #[error("operator D_{index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: i64,
        found: i64,
    },
    #[error("gauge condition fails at z^{power}")]
    GaugeViolation { power: usize },
    #[error("invalid retract: {0}")]
    InvalidRetract(String),
    #[error("unknown operator {0:?}")]
    UnknownOperator(String),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
