use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a tree")]
    NotATree,
    #[error("maximal strong modules undefined: {0}")]
    ModulesUndefined(String),
    #[error("subset budget exceeded: need {needed} subsets, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("host set of size {size} exceeds enumeration cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("assignment length {got} does not match {expected} variables")]
    Arity { got: usize, expected: usize },
    #[error("formula: {0}")]
    Formula(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("role mismatch: {0}")]
    RoleMismatch(String),
    #[error("assignment does not satisfy the source formula")]
    Unsatisfying,
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
