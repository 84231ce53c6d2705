use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown edge label {0}")]
    UnknownEdge(u32),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("edge {0} is a self-loop and cannot be contracted")]
    SelfLoopContraction(u32),
    #[error("graph does not have four 3-valent vertices with all others 4-valent")]
    NotPhi4Shape,
    #[error("zigzag family needs h >= 3, got {0}")]
    ZigzagTooSmall(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("invalid Dodgson spec: {0}")]
    InvalidDodgsonSpec(String),
    #[error("vertex {vertex} has valency {found}, expected {expected}")]
    WrongValency {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("need at least {needed} vertices, graph has {found}")]
    TooFewVertices { needed: usize, found: usize },
    #[error("polynomial is not linear in a{0}")]
    NotLinear(u8),
    #[error("degree {found} in a{var} exceeds {max}")]
    DegreeTooHigh { var: u8, found: u32, max: u32 },
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("variable index {0} out of range (max 31)")]
    VarOutOfRange(u32),
    #[error("unsupported field order {0}")]
    UnsupportedField(u64),
    #[error("polynomial uses a{0} which is outside the ambient variable set")]
    VariableOutsideAmbient(u8),
    #[error("divisibility check failed: {0}")]
    DivisibilityFailure(String),
    #[error("graph is not log-divergent (N = {edges}, 2h = {twice_loops})")]
    NotLogDivergent { edges: usize, twice_loops: usize },
    #[error("edge order is invalid: {0}")]
    InvalidOrder(String),
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
    #[error("reduction tree is incomplete")]
    IncompleteTree,
    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
