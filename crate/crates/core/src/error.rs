use thiserror::Error;

/// Every failure the library reports.
///
/// `code()` gives the stable machine-readable tag used by the CLI error
/// object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("path basis is not finite below length bound {0}")]
    BasisNotFinite(usize),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported characteristic {characteristic} for dimension {dim}")]
    UnsupportedCharacteristic { characteristic: u64, dim: usize },
    #[error("modules are defined over different algebras")]
    AlgebraMismatch,
    #[error("operation requires a structure-constant algebra")]
    RequiresStructureForm,
    #[error("matrix is not an intertwiner")]
    NotIntertwiner,
    #[error("precondition violated at index {index}: {reason}")]
    PreconditionViolated { index: usize, reason: String },
    #[error("sequence is not short exact: {0}")]
    NotExact(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("denominator vanishes at the tube parameter")]
    DenominatorVanishes,
    #[error("index order violated: need 1 <= i < j, got i = {i}, j = {j}")]
    IndexOrder { i: usize, j: usize },
    #[error("target field is not an extension of the source field")]
    NotAnExtension,
    #[error("factorization incomplete: {0}")]
    IncompleteFactorization(String),
    #[error("decomposition could not be certified: {0}")]
    IncompleteDecomposition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InvalidField(_) => "InvalidField",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Singular => "Singular",
            Error::BasisNotFinite(_) => "BasisNotFinite",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::UnsupportedCharacteristic { .. } => "UnsupportedCharacteristic",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::RequiresStructureForm => "RequiresStructureForm",
            Error::NotIntertwiner => "NotIntertwiner",
            Error::PreconditionViolated { .. } => "PreconditionViolated",
            Error::NotExact(_) => "NotExact",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DenominatorVanishes => "DenominatorVanishes",
            Error::IndexOrder { .. } => "IndexOrder",
            Error::NotAnExtension => "NotAnExtension",
            Error::IncompleteFactorization(_) => "IncompleteFactorization",
            Error::IncompleteDecomposition(_) => "IncompleteDecomposition",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
