use thiserror::Error;

/// A rejected input row, reported with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIssue {
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for RowIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Why a detected pair cannot be significance-tested and is sent to the residual group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UntestableReason {
    /// Fewer than three member nodes.
    TooSmall,
    /// No core node in the pair.
    NoCore,
    /// No periphery node in the pair.
    NoPeriphery,
    /// A single periphery node makes the idealized matrix constant.
    SinglePeriphery,
    /// The pair's induced subgraph is complete or empty.
    ConstantAdjacency,
}

impl UntestableReason {
    pub fn code(self) -> &'static str {
        match self {
            UntestableReason::TooSmall => "too-small",
            UntestableReason::NoCore => "no-core",
            UntestableReason::NoPeriphery => "no-periphery",
            UntestableReason::SinglePeriphery => "single-periphery",
            UntestableReason::ConstantAdjacency => "constant-adjacency",
        }
    }
}

impl std::fmt::Display for UntestableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyEdgeList,

    #[error("network has {actual} nodes but at least {needed} are required")]
    TooFewNodes { needed: usize, actual: usize },

    #[error("unknown node id `{0}`")]
    UnknownNode(String),

    #[error("node index {0} is out of range")]
    NodeIndexOutOfRange(usize),

    #[error("requested {m} edges but a {n}-node simple graph holds at most {max}")]
    EdgeCountOutOfRange { n: usize, m: u64, max: u64 },

    #[error("network is degenerate: {reason}")]
    DegenerateNetwork { reason: &'static str },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("expected header `{expected}`, found `{found}`")]
    BadHeader { expected: String, found: String },

    #[error("{} malformed row(s):\n{}", .0.len(), format_issues(.0))]
    MalformedRows(Vec<RowIssue>),

    #[error("transaction log is empty")]
    EmptyLog,

    #[error("labeling does not match network: {0}")]
    LabelingMismatch(String),

    #[error("labeling has no pair {0}")]
    UnknownPair(u32),

    #[error("label switching exceeded the sweep limit of {limit}")]
    SweepLimitExceeded { limit: usize },

    #[error("pair {k} is untestable: {reason}")]
    UntestablePair { k: u32, reason: UntestableReason },

    #[error("need at least {min} null samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("number of comparisons must be positive")]
    NoComparisons,

    #[error("jaccard index undefined: both sets are empty")]
    EmptySets,

    #[error("nodes without attributes: {}", .0.join(", "))]
    MissingAttributes(Vec<String>),

    #[error("labeling carries no significance flags")]
    MissingSignificance,

    #[error("exhaustive search supports at most {max} nodes, got {n}")]
    TooLargeForEnumeration { n: usize, max: usize },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

fn format_issues(issues: &[RowIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
