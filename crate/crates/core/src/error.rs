use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inadmissible bracket: {0}")]
    Inadmissible(String),
    #[error("{what} is numerically singular (condition number {condition:.3e})")]
    IllConditioned { what: &'static str, condition: f64 },
    #[error("not a compatible complex structure: {0}")]
    NotComplexStructure(String),
    #[error("not a vacuum form: {0}")]
    NotVacuumForm(String),
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("quadrature needs {evaluations} evaluations, budget is {budget}")]
    BudgetExceeded { evaluations: u128, budget: u128 },
    #[error("representation mismatch: expected {expected}, found {found}")]
    RepresentationMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("series tail {tail:.3e} above {tolerance:.1e} at degree {degree}")]
    SeriesTail {
        tail: f64,
        tolerance: f64,
        degree: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
