use crate::algebra::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not a prime modulus")]
    NonPrimeModulus(u64),
    #[error("index sets have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("matrix family is empty")]
    EmptyFamily,
    #[error("field has characteristic 2")]
    CharacteristicTwo,
    #[error("family member {index} is singular")]
    SingularMember { index: usize },
    #[error("budget of {limit} exceeded{}", best.map(|b| format!(" (best clique found: {b})")).unwrap_or_default())]
    BudgetExceeded { limit: u64, best: Option<usize> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("flats have different dimensions ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("pair {index} does not meet in a single point")]
    InvariantViolation { index: usize },
    #[error("flats {first} and {second} are parallel")]
    ParallelFlats { first: usize, second: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("fewer than two flats survive the removal")]
    TooFewSurvivors,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonSquare { .. } => "NonSquare",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::EmptyFamily => "EmptyFamily",
            Error::CharacteristicTwo => "CharacteristicTwo",
            Error::SingularMember { .. } => "SingularMember",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::OddDimension(_) => "OddDimension",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvariantViolation { .. } => "InvariantViolation",
            Error::ParallelFlats { .. } => "ParallelFlats",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::TooFewSurvivors => "TooFewSurvivors",
            Error::Parse(_) => "Parse",
        }
    }
}
