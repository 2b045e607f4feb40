use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants fall into three families, mirrored by [`Error::exit_code`]:
/// malformed input, violated mathematical hypotheses, and exhausted
/// sampling/search budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("the zero vector is not a projective point")]
    ZeroPoint,

    #[error("generators are linearly dependent (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("points coincide projectively")]
    CoincidentPoints,

    #[error("expected a line (2 generators), found {rows} generators")]
    NotALine { rows: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("direction vector is not generic: {0}")]
    NonGeneric(String),

    #[error("not a hypersurface: {forms} independent forms of degree {degree}")]
    NotHypersurface { degree: usize, forms: usize },

    #[error("no vanishing form of degree <= {0}")]
    NoFormFound(usize),

    #[error("retry budget of {0} attempts exhausted")]
    RetryBudget(usize),

    #[error("sampled span did not stabilize within {0} samples")]
    NotStabilized(usize),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Invalid(_)
            | Error::ZeroPoint
            | Error::RankDeficient { .. }
            | Error::NotALine { .. } => 1,
            Error::CoincidentPoints
            | Error::Hypothesis(_)
            | Error::NonGeneric(_)
            | Error::NotHypersurface { .. }
            | Error::NoFormFound(_) => 2,
            Error::RetryBudget(_) | Error::NotStabilized(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
