use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::Violation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The model failed validation; all violations are listed.
    InvalidModel(Vec<Violation>),
    UnknownEdgeId(String),
    UnknownVertex(String),
    /// `min` must be at least 1 and no larger than `max`.
    InvalidBounds { min: usize, max: usize },
    /// Walk enumeration would visit more than `cap` candidates.
    WalkCapExceeded { cap: usize, depth: usize },
    InfeasibleParams(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModel(violations) => {
                write!(f, "INVALID_MODEL: {} violation(s)", violations.len())?;
                for v in violations {
                    write!(f, "; {v}")?;
                }
                Ok(())
            }
            Error::UnknownEdgeId(id) => write!(f, "UNKNOWN_EDGE_ID: {id}"),
            Error::UnknownVertex(id) => write!(f, "UNKNOWN_VERTEX: {id}"),
            Error::InvalidBounds { min, max } => {
                write!(f, "INVALID_BOUNDS: need 1 <= min <= max, got min={min} max={max}")
            }
            Error::WalkCapExceeded { cap, depth } => {
                write!(f, "WALK_CAP_EXCEEDED: more than {cap} candidate walks (depth {depth})")
            }
            Error::InfeasibleParams(why) => write!(f, "INFEASIBLE_PARAMS: {why}"),
        }
    }
}

impl core::error::Error for Error {}
