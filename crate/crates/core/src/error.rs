use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph has {0} nodes; at most {max} supported", max = crate::MAX_NODES)]
    TooManyNodes(usize),
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {edges} edges; exhaustive subset enumeration is capped at {cap}")]
    EdgeBudget { edges: usize, cap: usize },
    #[error("node set is empty or covers every node; it has no boundary")]
    NoBoundary,
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("spectra have different edge counts ({0} vs {1})")]
    EdgeCountMismatch(usize, usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("unknown graph family or bad builder spec: {0}")]
    BuilderSpec(String),
    #[error("enumeration budget of {0} search nodes exceeded")]
    BudgetExceeded(u64),
    #[error("inconsistent class filter: {0}")]
    Filter(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("operation requires induced-edge data; context is degrees-only")]
    DegreesOnly,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
