use thiserror::Error;

use crate::algebra::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("bracket admits no compatible skew form omega")]
    NotOmegaLie,

    #[error("dimension {0} is too small (need at least {1})")]
    DimensionTooSmall(usize, usize),

    #[error("input fails the omega-Lie axioms")]
    InvalidAlgebra(Box<AxiomReport>),

    #[error("algebra is an ordinary Lie algebra (omega = 0)")]
    TrivialAlgebra,

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parameter alpha = {alpha} is excluded for {label}")]
    ParameterExcluded { label: String, alpha: String },

    #[error("{label} requires parameter {name}")]
    MissingParameter { label: String, name: &'static str },

    #[error("{label} takes no parameter {name}")]
    UnexpectedParameter { label: String, name: &'static str },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("{0} is not upper triangular as required")]
    NotUpperTriangular(&'static str),

    #[error("generated structure violates the omega-Lie axioms")]
    ConstraintViolated(Box<AxiomReport>),

    #[error("subspace is not closed under the bracket")]
    NotClosed,

    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),

    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: &'static str },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("at {path}: {source}")]
    Located { path: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotOmegaLie => "NotOmegaLie",
            Error::DimensionTooSmall(..) => "DimensionTooSmall",
            Error::InvalidAlgebra(_) => "InvalidAlgebra",
            Error::TrivialAlgebra => "TrivialAlgebra",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::ParameterExcluded { .. } => "ParameterExcluded",
            Error::MissingParameter { .. } => "MissingParameter",
            Error::UnexpectedParameter { .. } => "UnexpectedParameter",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::ZeroParameter(_) => "ZeroParameter",
            Error::NotUpperTriangular(_) => "NotUpperTriangular",
            Error::ConstraintViolated(_) => "ConstraintViolated",
            Error::NotClosed => "NotClosed",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::ScalarParse { .. } => "ScalarParse",
            Error::Schema { .. } => "SchemaError",
            Error::Located { source, .. } => source.kind(),
        }
    }

    /// True for errors that describe a mathematically invalid object rather
    /// than malformed input.
    pub fn is_mathematical(&self) -> bool {
        match self {
            Error::Located { source, .. } => source.is_mathematical(),
            _ => matches!(
                self,
                Error::NotOmegaLie | Error::InvalidAlgebra(_) | Error::ConstraintViolated(_) | Error::TrivialAlgebra
            ),
        }
    }

    /// JSON path of the offending input, when known.
    pub fn path(&self) -> Option<&str> {
        match self {
            Error::Schema { path, .. } | Error::Located { path, .. } => Some(path),
            _ => None,
        }
    }

    pub(crate) fn at(self, path: impl Into<String>) -> Self {
        match self {
            Error::Schema { .. } | Error::Located { .. } => self,
            other => Error::Located {
                path: path.into(),
                source: Box::new(other),
            },
        }
    }
}
