use thiserror::Error;

/// Errors raised by the algorithms, the exact analysis and the chain tools.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A crossover that needs a differing position was handed two equal parents.
    #[error("crossover operator needs parents that differ in at least one position")]
    IdenticalParents,

    #[error("state space too large: {states} states requested, cap is {cap}")]
    SizeLimit { states: u128, cap: u128 },

    #[error("{0}")]
    EnumerationLimit(String),

    /// Some non-optimal state cannot reach the optimum.
    #[error("chain is not absorbing: state {state} cannot reach an optimal state")]
    NotAbsorbing { state: usize },

    #[error("mapping does not send optimal states to optimal states (state {state})")]
    MappingInvalid { state: usize },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("linear solve failed: {0}")]
    Solver(String),
}

impl Error {
    /// True for both flavours of "too big to enumerate".
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::EnumerationLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
