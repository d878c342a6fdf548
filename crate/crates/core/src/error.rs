use alloc::string::String;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input: unknown letter, bad index, inconsistent sizes.
    #[error("input error: {0}")]
    Input(String),
    /// Group data that violates the group axioms.
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A rational subset that is not contained in the target subgroup.
    #[error("subset not contained in subgroup (witness has {} letters)", witness.len())]
    NotContained { witness: Word },
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Brute-force enumeration bound exceeded.
    #[error("enumeration guard exceeded: {0}")]
    Guard(String),
    /// A constructed object failed its own verification.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
