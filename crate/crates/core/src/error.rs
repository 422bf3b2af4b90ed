use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ring or graph description that can never be constructed
    /// (zero modulus, composite prime argument, non-monic modulus
    /// polynomial, illegal shuriken parameters, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// An exhaustive scan or construction was refused because it exceeds
    /// the configured size cap.
    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    /// An argument outside the mathematical domain of an operation
    /// (zero idempotent in the Cl2 degree formula, a non-bijective map
    /// passed to the bijection checker, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The isomorphism search ran out of budget. Distinct from a negative
    /// verdict: nothing was decided.
    #[error("isomorphism search inconclusive after {nodes} nodes (budget {budget})")]
    Inconclusive { nodes: u64, budget: u64 },

    /// A request outside the verified range of a check.
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
