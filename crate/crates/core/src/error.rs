use thiserror::Error;

/// Failures while building or validating graphs and trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a cycle: {edges} edges on {n} vertices")]
    Cyclic { edges: usize, n: usize },
    #[error("graph needs at least {needed} vertices, got {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("order {0} is outside the supported range 1..=20")]
    OrderOutOfRange(usize),
    #[error("Prüfer entry {entry} is outside 0..{n}")]
    PruferEntry { entry: usize, n: usize },
    #[error("malformed canonical code")]
    BadCode,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Failures of the isolation and domination solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("brute force refuses {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("no isolating set of size <= {cap}; the optimum is at least {}", cap + 1)]
    CapExceeded { cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Failures of the family generators and constructive procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("clause violated: {0}")]
    Clause(String),
    #[error("vertex {0} is not a valid root (must lie in A or X)")]
    BadRoot(usize),
    #[error("vertex {0} is not a support vertex")]
    NotSupport(usize),
    #[error("construction stalled: {0}")]
    Stalled(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Failures of the sweep harness itself (not theorem violations).
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}
