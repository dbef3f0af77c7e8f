use thiserror::Error;

/// Errors produced by the allocation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate topic id `{0}`")]
    DuplicateTopic(String),
    #[error("taxonomy has no root (every node names a parent)")]
    NoRoot,
    #[error("taxonomy has multiple roots: `{0}` and `{1}`")]
    MultipleRoots(String, String),
    #[error("taxonomy contains a cycle through `{0}`")]
    TaxonomyCycle(String),
    #[error("topic `{child}` names unknown parent `{parent}`")]
    DanglingParent { child: String, parent: String },
    #[error("unknown topic id `{0}`")]
    UnknownTopic(String),
    #[error("topic `{0}` is not in the preference list")]
    TopicNotRanked(String),
    #[error("preference list has {got} topics but the weight vector has {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("frontier is empty")]
    EmptyFrontier,
    #[error(
        "frontier point ({x}, {y}) lies outside the reference box [0, {rx}) x [0, {ry})"
    )]
    PointOutsideReferenceBox { x: f64, y: f64, rx: f64, ry: f64 },
    #[error("enumeration space of {space:.0} assignment vectors exceeds the budget of {budget:.0}")]
    EnumerationBudget { space: f64, budget: f64 },
    #[error("requested capacity surplus is impossible: maximum total capacity {max_total} < required {required:.0}")]
    ImpossibleSurplus { max_total: u64, required: f64 },
    #[error("capacity sampling did not reach the surplus threshold after {attempts} redraws")]
    CapacityRedrawExhausted { attempts: u32 },
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
