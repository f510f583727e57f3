//! Rewriting engine for decorated, locally planar trivalent graphs.
//!
//! Graphs are built from the gates λ, Υ (fan-out), ⋏ (application), ⊤ and
//! the dilation gates ε̄ labelled by elements of a free abelian group. The
//! crate provides the local and global moves on these graphs, an encoder
//! from lambda terms (and their dilation-extended variant), global
//! predicates, reduction strategies and a small library of standard graphs.

pub mod error;
pub mod gen;
pub mod graph;
pub mod group;
pub mod moves;
pub mod predicates;
pub mod reduce;
pub mod term;

pub use error::{GraphError, MoveError, ParseError};
pub use graph::{Gate, GateKind, Graph, NodeId, EdgeId, PortRef};
pub use group::GroupElem;
