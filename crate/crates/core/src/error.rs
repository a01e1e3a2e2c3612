use thiserror::Error;

/// Errors raised by the arithmetic, barrier, density and divisor modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sieve limit {limit} is below 2")]
    LimitTooSmall { limit: u64 },

    #[error(
        "sieve to {limit} needs {needed} bytes, budget is {budget} bytes; use a segmented scan"
    )]
    MemoryBudget {
        limit: u64,
        needed: u64,
        budget: u64,
    },

    #[error("{value} lies beyond the sieve limit {limit}")]
    BeyondSieve { value: u64, limit: u64 },

    #[error("{what} must be at least {min}, got {value}")]
    BelowDomain {
        what: &'static str,
        value: u64,
        min: u64,
    },

    #[error("{what} must be at most {max}, got {value}")]
    AboveDomain {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("arithmetic overflow computing {quantity}")]
    Overflow { quantity: String },

    #[error("invalid epsilon: {reason}")]
    InvalidEps { reason: String },

    #[error("epsilon {eps} exceeds 1; the windowed check and the guaranteed bound need eps <= 1")]
    EpsAboveOne { eps: String },

    #[error("t = {t} gives primorial({}) which exceeds the 64-bit range", t + 1)]
    BoundUnrepresentable { t: u64 },

    #[error("family condition s*eps > k fails for s = {s}, k = {k}, eps = {eps}")]
    FamilyCondition { s: u64, k: u64, eps: String },

    #[error("prime index {index} appears more than once")]
    RepeatedPrimeIndex { index: u64 },

    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: u64,
        got: u64,
    },

    #[error("relation needs m < n, got m = {m}, n = {n}")]
    NotBelow { m: u64, n: u64 },

    #[error("empty range {lo}..={hi}")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("scan end {hi} exceeds the supported maximum {max}")]
    ScanTooLarge { hi: u64, max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
