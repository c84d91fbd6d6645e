use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KanError {
    #[error("functoriality fails between {from:?} and {to:?}")]
    Functoriality { from: String, to: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("subposet is not {0} closed")]
    NotClosed(&'static str),
    #[error("diagram is not cocartesian at {element:?}")]
    NotCocartesian { element: String },
    #[error("cover pieces {first} and {second} meet outside the pieces below both")]
    CoverNotClosed { first: String, second: String },
    #[error("cover does not contain {0:?}")]
    CoverIncomplete(String),
    #[error("no stabilization within {} stages, dims {trajectory:?}", trajectory.len().saturating_sub(1))]
    NotStabilized { trajectory: Vec<usize> },
    #[error("dimension {dim} exceeds the cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("json error: {0}")]
    Json(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
