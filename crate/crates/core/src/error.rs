use std::fmt;

use crate::lattice::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not a pcd-lattice: {0}")]
    Invalid(ValidationReport),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a cover: join of the parts is {join}, expected {target}")]
    NotACover { join: String, target: String },

    #[error("precondition failed: {0}")]
    Precondition(Precondition),

    #[error("no scale from {from} to {to}: pair is not in the relation")]
    NoScale { from: String, to: String },

    #[error("{what} has {size} elements, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("lattice mismatch: {0}")]
    Mismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A violated hypothesis, with the element indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precondition {
    pub what: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.witness.is_empty() {
            write!(f, "{}", self.what)
        } else {
            write!(f, "{} (witness {:?})", self.what, self.witness)
        }
    }
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Precondition(Precondition {
            what: what.into(),
            witness,
        })
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
