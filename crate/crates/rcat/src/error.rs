use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("model error: {0}")]
    ModelError(String),
    #[error("incompatible family: members {first} and {second} are not compatible")]
    IncompatibleFamily { first: usize, second: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("ill-formed atlas: {0}")]
    IllFormedAtlas(String),
    #[error("non-functional relation: {0}")]
    NonFunctionalRelation(String),
    #[error("ill-formed cocycle: {0}")]
    IllFormedCocycle(String),
    #[error("bad transition family: {0}")]
    BadTransitionFamily(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("not in equalizer: {0}")]
    NotInEqualizer(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }

    pub fn model(msg: impl Into<String>) -> Self {
        Error::ModelError(msg.into())
    }

    /// Stable upper-case identifier, used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(_) => "SHAPE_MISMATCH",
            Error::ModelError(_) => "MODEL_ERROR",
            Error::IncompatibleFamily { .. } => "INCOMPATIBLE_FAMILY",
            Error::SearchBudgetExceeded { .. } => "SEARCH_BUDGET_EXCEEDED",
            Error::IllFormedAtlas(_) => "ILL_FORMED_ATLAS",
            Error::NonFunctionalRelation(_) => "NON_FUNCTIONAL_RELATION",
            Error::IllFormedCocycle(_) => "ILL_FORMED_COCYCLE",
            Error::BadTransitionFamily(_) => "BAD_TRANSITION_FAMILY",
            Error::NotIso(_) => "NOT_ISO",
            Error::NotInEqualizer(_) => "NOT_IN_EQUALIZER",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnknownCheck(_) => "UNKNOWN_CHECK",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
