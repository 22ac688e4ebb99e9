use thiserror::Error;

/// Errors raised while reading or transforming a digraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {tail} -> {head}")]
    DuplicateArc {
        line: usize,
        tail: usize,
        head: usize,
    },
    #[error("header declares {declared} arcs but {found} were listed")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    NoSuchVertex { vertex: usize, vertex_count: usize },
    #[error("graph needs at least {required} vertices, has {actual}")]
    TooSmall { required: usize, actual: usize },
    #[error("invalid split graph: {0}")]
    InvalidSplit(String),
    #[error("cannot place {arcs} arcs on {n} vertices: {reason}")]
    ArcBudget {
        n: usize,
        arcs: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("coefficient exponent k must lie in 1..=64, got {0}")]
    InvalidExponent(u32),
    #[error("truncation degree m must be positive")]
    InvalidTruncation,
    #[error("monomial degree {degree} is not below the truncation degree {m}")]
    DegreeTooLarge { degree: usize, m: usize },
    #[error("ring parameter mismatch: (k={0}, m={1}) vs (k={2}, m={3})")]
    ParamMismatch(u32, usize, u32, usize),
    #[error("matrix is not square or has ragged rows")]
    NotSquare,
    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,
    #[error("reference determinant limited to dimension {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameter {name} = {value} violates {constraint}")]
    Invalid {
        name: &'static str,
        value: u128,
        constraint: &'static str,
    },
    #[error("truncation degree overflows: n={n}, ell={ell}")]
    Overflow { n: usize, ell: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FingerprintError {
    #[error("assignment has length {actual}, expected {expected}")]
    AssignmentLength { expected: usize, actual: usize },
    #[error("sample point does not match the graph")]
    SampleMismatch,
    #[error("q vector does not match the sampled set")]
    QMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limited to {max} vertices/variables, got {actual}")]
    TooLarge { actual: usize, max: usize },
    #[error(transparent)]
    Fingerprint(#[from] FingerprintError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Fingerprint(#[from] FingerprintError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("worker pool: {0}")]
    Pool(String),
}
