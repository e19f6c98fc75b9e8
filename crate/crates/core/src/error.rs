use thiserror::Error;

use crate::pointer::{Pointer, PointerString};
use crate::rules::ReductionRule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `position` is 1-based over whitespace-separated tokens.
    #[error("invalid token `{token}` at position {position}: {reason}")]
    Parse {
        token: String,
        position: usize,
        reason: String,
    },

    #[error("string `{0}` is not legal: every identity must occur exactly twice")]
    NotLegal(PointerString),

    #[error("pointer identity {0} does not occur in the string")]
    NotInDomain(u32),

    #[error("identity {0} is not a vertex label of the graph")]
    LabelAbsent(u32),

    #[error("expected two distinct identities, got {0} twice")]
    SameIdentity(u32),

    #[error("operation requires a nonempty string")]
    EmptyString,

    #[error("invalid micronuclear pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid rule `{text}`: {reason}")]
    InvalidRule { text: String, reason: String },

    #[error("sdr needs pointers with distinct identities, got {0} and {1}")]
    SdrSameIdentity(Pointer, Pointer),

    #[error("{rule} is not applicable to `{string}`")]
    NotApplicable { rule: ReductionRule, string: PointerString },

    /// `step` is 1-based.
    #[error("step {step} ({rule}) is not applicable to intermediate string `{string}`")]
    StepNotApplicable {
        step: usize,
        rule: ReductionRule,
        string: PointerString,
    },

    #[error("domain has {size} identities, exceeding the search bound of {limit}")]
    Capacity { size: usize, limit: usize },

    #[error("malformed reduction graph: {0}")]
    Structure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
