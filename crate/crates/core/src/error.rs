use thiserror::Error;

use crate::node::Node;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("node {0} is not a meeting node")]
    NotMeetingNode(Node),
    #[error("operation not defined here: {0}")]
    Domain(String),
    #[error("configuration is not gatherable over Weber nodes: {0}")]
    Ungatherable(String),
    #[error("invariant {invariant} violated at step {step}: {detail}")]
    InvariantViolation {
        invariant: &'static str,
        step: u64,
        detail: String,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state budget exhausted after {explored} states")]
    ResourceExhausted { explored: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
