//! Partitioned binary relations (PBRs) and the categories built from them.
//!
//! A PBR on `(X, Y)` is a directed graph on the disjoint union of a domain `X`
//! and a codomain `Y`. Composition glues the codomain of one onto the domain
//! of the next and keeps the boundary-to-boundary walks that alternate
//! between factors.

pub mod bits;
pub mod classical;
pub mod compose;
pub mod deform;
pub mod dot;
pub mod error;
pub mod factor;
pub mod format;
pub mod oriented;
pub mod pbr;
pub mod random;

pub use classical::{BinaryRelation, Partition};
pub use compose::{compose, compose_all, AlephSequence};
pub use deform::{compose_deformed, frothy_class_count, frothy_edges, DeformedMorphism, TaggedEdge};
pub use error::{Error, Result};
pub use factor::{factorize, BlockDecomposition, DoubleMorphism, Factorization, PurePbr};
pub use oriented::{OMorphism, OObject};
pub use pbr::{labels, Edge, Pbr, Side, Vertex};
