use std::fmt;

use thiserror::Error;

use crate::orbit::Checkpoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),

    #[error("sphere is a hyperplane and has no finite center")]
    NotABall,

    #[error("point lies below the half-space x3 >= 0 (x3 = {0})")]
    InvalidHalfSpace(f64),

    #[error("center is not in a page: x4 = {0}")]
    NotInPage(f64),

    #[error("necklace has no pearls")]
    EmptyNecklace,

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("construction infeasible: {0}")]
    ConstructionInfeasible(String),

    #[error("{candidate} overlaps {offender}")]
    OverlapViolation { candidate: String, offender: String },

    #[error("necklace has not been validated")]
    ValidationRequired,

    #[error("orbit budget of {budget} balls exceeded while expanding depth {depth}")]
    BudgetExceeded {
        budget: usize,
        depth: usize,
        checkpoint: Box<Checkpoint>,
    },

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("shell {requested} requested but the frontier only reaches depth {available}")]
    InsufficientDepth { requested: usize, available: usize },

    #[error("word of odd length {0} does not lift")]
    OddWord(usize),

    #[error("orientation-reversing map has no holomorphic lift")]
    NotLiftable,

    #[error("{0}")]
    Parse(ParseError),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// A configuration or data file error with enough position information to fix it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse(ParseError {
            line: None,
            field: field.into(),
            message: message.into(),
        })
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}
