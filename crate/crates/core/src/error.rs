use thiserror::Error;

/// Errors produced by parsing, validation and the exact deciders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: duplicate edge `{src} {dst} {label}`")]
    DuplicateEdge {
        line: usize,
        src: String,
        dst: String,
        label: String,
    },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("graph fails validation: {0}")]
    InvalidGraph(String),

    #[error("{what} exceeded cap of {cap} (raise {flag})")]
    ResourceExceeded {
        what: &'static str,
        cap: usize,
        flag: &'static str,
    },

    /// The X/Y decomposition of a generalized vertex is only defined when the
    /// vertex has at least one incoming label word at the requested level.
    #[error("vertex `{vertex}` has no incoming label words at level {level}; treat its class directly")]
    NoIncomingWords { vertex: String, level: u32 },

    #[error("term set {set} is not a member of the working family")]
    FamilyClosure { set: String },

    #[error("family is not weakly left-resolving; the relation calculus is undefined over it")]
    NotWeaklyLeftResolving,
}

pub type Result<T> = std::result::Result<T, Error>;
