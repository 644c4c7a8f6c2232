use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("vertex `{0}` is not traceable to the base complex")]
    Lineage(String),
    #[error("unknown cover element `{0}`")]
    UnknownElement(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid basepoint: {0}")]
    InvalidBasepoint(String),
    #[error("not a refinement: {0}")]
    NotRefinement(String),
    #[error("complex is disconnected: {0}")]
    Disconnected(String),
    #[error("basepoint mismatch: {0}")]
    BasepointMismatch(String),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("intersection is not path connected: {0}")]
    NotSplittable(String),
    #[error("working level too coarse: {0}")]
    WorkingLevelTooCoarse(String),
    #[error("disconnected cover element: {0}")]
    DisconnectedElement(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
