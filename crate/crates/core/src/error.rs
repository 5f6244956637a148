use crate::grid::{Cell, Mode};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operation that needs a nonempty component received an empty one.
    #[error("component is empty")]
    EmptyComponent,

    /// A cell set expected to be connected in the given mode is not.
    #[error("cell set is not {mode}-connected")]
    NotConnected { mode: Mode },

    /// A component cell is not occupied in the configuration.
    #[error("cell {cell:?} is not occupied in the configuration")]
    NotOccupied { cell: Cell },

    /// An exhaustive enumeration was asked to run on an instance above its
    /// size guard.
    #[error("{what} has size {size}, above the exhaustive-search limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// Two cycles share too few points to merge into a single cycle.
    #[error("cycles share {shared} corner(s); merging requires at least 2")]
    MergeTooFewSharedPoints { shared: usize },

    /// A traced circuit revisited some corner more than twice, which cannot
    /// happen for a boundary walk on this lattice.
    #[error("contour walk visited corner {corner:?} more than twice")]
    PinchLimitExceeded { corner: crate::grid::Corner },

    /// Input data (grid text, JSON, CLI arguments) could not be parsed.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A construction finished in a state that violates one of its guaranteed
    /// properties; `details` carries a trace dump of how it got there.
    #[error("postcondition `{what}` failed: {details}")]
    Postcondition { what: &'static str, details: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
