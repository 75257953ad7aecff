use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid field specification `{0}`")]
    FieldSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("linear forms are dependent")]
    Dependent,
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("the space is empty")]
    EmptySpace,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("the ideal is the unit ideal (empty variety)")]
    EmptyVariety,
}

pub type Result<T> = std::result::Result<T, Error>;
