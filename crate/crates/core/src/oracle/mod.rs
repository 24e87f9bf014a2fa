//! Brute-force ground truth for small instances. Nothing here relies on the
//! theory the planners use.

mod catalog;
mod cover;
mod iso;

use thiserror::Error;

pub use catalog::{rooted_shapes, KNOWN_SHAPE_COUNTS};
pub use cover::{min_cover_walk, CoverState, CoverWalk, MAX_TARGETS};
pub use iso::{iso_check, MAX_ISO_NODES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{count} targets exceed the cover-walk cap of {cap}")]
    TooManyTargets { count: usize, cap: usize },
    #[error("target {0} is not a node of the tree")]
    UnknownTarget(usize),
}
