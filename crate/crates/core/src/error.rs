use thiserror::Error;

use crate::graph::Violation;

/// Syntax error in a term, group literal, or graph file. `pos` is a line
/// number for graph files and a byte offset for terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        Self {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("orientation mismatch: {0}")]
    Orientation(String),
    #[error("port used twice: {0}")]
    PortReused(String),
    #[error("unknown endpoint: {0}")]
    UnknownEndpoint(String),
    #[error("duplicate leaf name: {0}")]
    DuplicateLeaf(String),
    #[error("invalid graph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("stale move instance: {0}")]
    Stale(String),
    #[error("side condition no longer holds: {0}")]
    SideCondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("unknown library graph `{0}`")]
    Unknown(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("derivation failed: {0}")]
pub struct DerivationError(pub String);
