use thiserror::Error;

use crate::realize::Refusal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("word has no double points")]
    EmptyWord,
    #[error("crossing {0} does not occur in the word")]
    UnknownCrossing(u32),
    #[error("word is not realizable on the sphere: {0}")]
    NotRealizable(Refusal),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("requested {requested} crossings, bound is {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("malformed predicate: {0}")]
    MalformedPredicate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
