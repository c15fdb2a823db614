use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mathematically undefined request (division by zero, vp(p, 0), ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input fails a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Weight/character parity condition χ(−1) = (−1)^k fails.
    #[error("parity mismatch: {0}")]
    Parity(String),

    /// The function is not holomorphic at a cusp.
    #[error("not holomorphic at cusp {a}/{c}")]
    NotHolomorphic { a: i64, c: u64 },

    /// A computation would exceed its configured work budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An identity the algorithm relies on did not hold.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
