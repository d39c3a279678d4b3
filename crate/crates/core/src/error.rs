//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the numeric core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point lies outside the domain of the evaluated object.
    #[error("point {point} lies outside {domain}")]
    OutsideDomain {
        /// Human-readable description of the admissible domain.
        domain: &'static str,
        /// The offending point, formatted for the message.
        point: String,
    },
    /// Derivative order above the supported range 0..=3.
    #[error("derivative order {0} not supported (maximum is 3)")]
    UnsupportedOrder(u32),
    /// Structurally invalid argument: bad lengths, ranges, or parameters.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input is well-formed but degenerate for the requested operation.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// A sampled map violates its invariants.
    #[error("invalid map: {0}")]
    InvalidMap(String),
    /// Sample spacing does not pin down a continuous branch.
    #[error("branch ambiguity: {0}")]
    BranchAmbiguity(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
