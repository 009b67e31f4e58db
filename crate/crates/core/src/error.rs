use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("malformed cycle notation at byte {offset}: {reason}")]
    Malformed { offset: usize, reason: String },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("operation requires a non-identity permutation")]
    IdentityNotAllowed,

    #[error("operation requires a non-trivial group")]
    TrivialGroup,

    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: String, cap: u64 },

    #[error("orbit size exceeded cap {cap}")]
    OrbitCapExceeded { cap: usize },

    #[error("malformed tuple: {0}")]
    MalformedTuple(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("action is not transitive on {0}")]
    NotTransitive(&'static str),

    #[error("relation is not invariant under the product action")]
    NotInvariant,

    #[error("unknown group '{0}'")]
    UnknownGroup(String),

    #[error("validation failed for {label}: {reason}")]
    Validation { label: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {reason}")]
    GeneratorFile {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}
