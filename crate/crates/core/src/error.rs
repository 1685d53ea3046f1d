use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("submodules live in different parent modules")]
    ParentMismatch,
    #[error("matrix does not define a well-defined homomorphism: column {column} of F·P leaves the codomain relations")]
    NotWellDefined { column: usize },
    #[error("oracle infeasible: {what} has cardinality {cardinality}, cap is {cap}")]
    OracleInfeasible {
        what: String,
        cardinality: String,
        cap: u64,
    },
    #[error("module is infinite; {0} requires a finite module")]
    InfiniteModule(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid subcategory: {0}")]
    InvalidSubcategory(String),
    #[error("{0}")]
    WrongRing(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
