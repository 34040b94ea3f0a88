use thiserror::Error;

/// Errors surfaced by the group engine and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("enumeration budget of {budget} exceeded ({needed} needed)")]
    BudgetExceeded { budget: usize, needed: usize },

    #[error("elements have incompatible payloads or shapes")]
    IncompatiblePayloads,

    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("element does not belong to the ambient group")]
    ElementNotInAmbient,

    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("permutation set is not transitive on its points")]
    NotTransitive,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime power")]
    BadPrimePower(u64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("structure check failed: {0}")]
    StructureCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
