use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge list parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what}: size {requested} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("{what}: search budget exhausted after {nodes} nodes")]
    Timeout { what: &'static str, nodes: u64 },

    #[error("{what}: enumeration cap of {cap} exceeded")]
    EnumerationCap { what: &'static str, cap: usize },

    #[error("vertex set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("eigenspace constant c is not constant across edges (range {min:.9} .. {max:.9})")]
    NonConstantC { min: f64, max: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisFailed(String),

    #[error("no homomorphism from {from} to {to}")]
    NoHomomorphism { from: String, to: String },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("domain error: {0}")]
    Domain(String),
}
