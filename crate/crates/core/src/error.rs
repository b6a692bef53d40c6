use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("relation for {relation} references generator g{generator}, which is not strictly later")]
    NonTriangular { relation: String, generator: usize },

    #[error("{0}")]
    ExponentRange(String),

    #[error("{0} is not a supported prime (need a prime below 128)")]
    BadPrime(u32),

    #[error("group order p^{n} exceeds the configured cap p^{cap}")]
    OrderCap { n: usize, cap: usize },

    #[error("brute-force cap exceeded: |G| = {order} > {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("action matrices violate the group relation {0}")]
    RelationViolated(String),

    #[error("unknown catalog group '{0}'")]
    UnknownCatalog(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("plan infeasible: {0}")]
    Infeasible(String),

    #[error("invalid field descriptor: {0}")]
    Descriptor(String),

    #[error("invalid discriminant {d}: {msg}")]
    Discriminant { d: i64, msg: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
