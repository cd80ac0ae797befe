use thiserror::Error;

use crate::counter::UrmInstruction;
use crate::pairing::{Nat, VerificationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A pairing result would need more bits than the configured guard allows.
    #[error("resource guard exceeded: result needs at least {bits} bits (max-bits {max_bits})")]
    Resource { bits: u64, max_bits: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("URM indices start at 1: {0}")]
    ZeroIndex(UrmInstruction),

    #[error("duplicate node label {0}")]
    DuplicateLabel(Nat),

    #[error("more than one rule for state {state} scanning {scanned}")]
    NonDeterministic { state: Nat, scanned: Nat },

    #[error("machine input needs at least one argument")]
    EmptyInput,

    #[error("pairing scheme rejected: {0}")]
    InvalidScheme(VerificationReport),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
