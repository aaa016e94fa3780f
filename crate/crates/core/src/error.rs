use thiserror::Error;

use crate::rootsys::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank} (supported: A1..A7, B2)")]
    UnsupportedFamilyRank { family: Family, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("weight has rank {found}, root system has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("root coordinates do not map to an integral weight")]
    NonIntegralWeight,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown atom `{name}` at position {pos}")]
    UnknownAtom { pos: usize, name: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("expression is not a G-module: {0}")]
    NotAGModule(String),

    #[error("size cap exceeded: {what} has {size} entries (cap {cap})")]
    SizeCap { what: String, size: u128, cap: u128 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("ledger gap: no entry for H^{p}(X, b^{q}) in {family}{rank}")]
    LedgerGap { family: Family, rank: usize, q: usize, p: usize },

    #[error("ledger validation failed for {key}: {reason}")]
    ValidationFailure { key: String, reason: String },

    #[error("malformed ledger: {0}")]
    MalformedLedger(String),

    #[error("matrix is not strictly upper triangular (index {0})")]
    NotStrictlyUpper(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix {0} is not trace-free")]
    NotTraceFree(usize),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}
