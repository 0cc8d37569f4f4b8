use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operator must have constant term 1, found {0}")]
    NonUnitOperator(String),
    #[error("flow supplies no right-hand side for variable `{0}`")]
    MissingFlowComponent(String),
    #[error("substitution map does not cover variable `{0}`")]
    IncompleteMap(String),
    #[error("shift operator is not monic of top degree {expected}: {found}")]
    NotMonic { expected: i32, found: String },
    #[error("product needs Λ-powers down to {needed} but the factors are only exact down to {available}; increase the root depth to at least {depth}")]
    WindowOverflow { needed: i32, available: i32, depth: u32 },
    #[error("commutator has a nonzero ε⁰ part at Λ^{power}")]
    NonzeroClassicalCommutator { power: i32 },
    #[error("not a total x-derivative: residual {0}")]
    NotTotalDerivative(String),
    #[error("shape violation in {context}: {detail}")]
    Shape { context: String, detail: String },
    #[error("linear system at ε^{order} has no solution")]
    Inconsistent { order: u32 },
    #[error("linear system at ε^{order} has a {kernel}-dimensional kernel")]
    NotUnique { order: u32, kernel: usize },
    #[error("integrability fails for {0}")]
    Integrability(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
