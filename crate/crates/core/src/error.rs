use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("width mismatch: expected {expected}, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("variable {var} out of range 1..={n}")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("variable {0} occurs with both polarities")]
    ContradictoryLiterals(usize),
    #[error("assignment width must be positive")]
    EmptyWidth,
    #[error("assignment {0} appears with conflicting labels")]
    ConflictingLabels(String),
    #[error("vertex {vertex} out of range 1..={order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),
    #[error("graph order mismatch: expected {expected}, got {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("adjacency bits do not encode a simple undirected graph")]
    NotAdjacencyMatrix,
    #[error("forbidden family must be nonempty")]
    EmptyFamily,
    #[error("parameter k = {k} exceeds {limit}")]
    ParameterTooLarge { k: usize, limit: usize },
    #[error("hypothesis space of {0} candidates exceeds the brute-force guard")]
    GuardExceeded(u128),
    #[error("variable set is not a backdoor for these samples")]
    InvalidBackdoor,
    #[error("distribution support is empty")]
    EmptySupport,
    #[error("distribution weight {0} is not strictly positive")]
    NonPositiveWeight(f64),
    #[error("distribution weights sum to {0}, not 1")]
    WeightSum(f64),
    #[error("support assignment {0} repeated")]
    DuplicateSupport(String),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("epsilon and delta must lie in (0, 1]")]
    InvalidAccuracy,
    #[error("hypothesis does not match concept kind {0}")]
    KindMismatch(&'static str),
    #[error("scenario parameters disagree: {0}")]
    ScenarioParams(String),
    #[error("no hypothesis of the class is consistent with the drawn samples")]
    NotRealizable,
    #[error("set F{index} has {size} elements; a cycle needs at least 3")]
    SetTooSmall { index: usize, size: usize },
    #[error("hitting-set family member {0} is empty or out of range")]
    InvalidSet(usize),
    #[error("hypothesis length {length} exceeds size bound {bound}")]
    SizeBoundExceeded { length: usize, bound: usize },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
