use thiserror::Error;

use crate::base::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance mismatch: {0} vs {1}")]
    InstanceMismatch(Instance, Instance),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not an element of {instance}: {msg}")]
    Membership { instance: Instance, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("illegal expression: {0}")]
    Illegal(String),
    #[error("inversion of a null fraction")]
    InverseOfZero,
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
