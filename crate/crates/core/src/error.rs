use thiserror::Error;

/// Errors raised while reading inputs or checking the preconditions of a
/// construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("facet list contains an empty facet")]
    EmptyFacet,

    #[error("simplex {0} is not in the complex")]
    NotASimplex(String),

    #[error("Coxeter system is not right-angled (pair {0}, {1} has label {2})")]
    NotRightAngled(String, String, String),

    #[error("colouring is not proper: adjacent vertices `{0}` and `{1}` share colour {2}")]
    ImproperColoring(String, String, usize),

    #[error("star of `{0}` misses at least one colour")]
    StarCondition(String),

    #[error("vertex `{0}` does not name a simplex of a barycentric subdivision")]
    NotASubdivision(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
}

impl Error {
    pub(crate) fn from_json(err: serde_json::Error) -> Self {
        Error::Parse { line: err.line(), column: err.column(), message: err.to_string() }
    }

    /// True for errors caused by malformed or inconsistent input files, as
    /// opposed to well-formed inputs that fail a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Validation(_)
                | Error::UnknownVertex(_)
                | Error::UnknownGenerator(_)
                | Error::EmptyFacet
                | Error::NotASimplex(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
