use thiserror::Error;

use crate::pbr::Side;

/// Errors raised by construction, validation and composition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label `{label}` appears more than once on the {side} side")]
    DuplicateLabel { label: String, side: Side },

    #[error("edge endpoint `{label}` is not declared on the {side} side")]
    DanglingEdgeEndpoint { label: String, side: Side },

    #[error("edge {source_label}@{source_side} -> {target_label}@{target_side} is listed twice")]
    DuplicateEdge {
        source_label: String,
        source_side: Side,
        target_label: String,
        target_side: Side,
    },

    #[error("incomposable shapes: codomain {left:?} does not match domain {right:?}")]
    IncomposableShapes { left: Vec<String>, right: Vec<String> },

    #[error("empty composable sequence")]
    EmptySequence,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid oriented Brauer morphism: {0}")]
    InvalidOMorphism(String),

    #[error("not an oriented partial Brauer diagram")]
    NotABrauerDiagram,

    /// A closure property that must hold for every valid input failed.
    #[error("closure violated: {0}")]
    ClosureViolation(String),

    #[error("assertion failed: {0}")]
    AssertionFailure(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
