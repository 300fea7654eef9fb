use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("subgroup lattice exceeded the subgroup-count cap of {cap}")]
    LatticeCapExceeded { cap: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("field of size {0} is too small for this construction")]
    FieldTooSmall(u32),

    #[error("field of size {0} is beyond the supported range")]
    FieldTooLarge(u32),

    #[error("unknown construction name `{0}`")]
    UnknownName(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("time budget of {seconds}s exceeded")]
    TimeBudgetExceeded { seconds: u64 },

    #[error("element id {0} out of range")]
    InvalidElement(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
