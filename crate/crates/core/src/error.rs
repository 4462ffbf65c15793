use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("quiver is not of Dynkin type")]
    NotDynkin,

    #[error("quiver has an oriented cycle")]
    CyclicQuiver,

    #[error("vertex {0} is not a sink")]
    NotSink(usize),

    #[error("vertex {0} is not a source")]
    NotSource(usize),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("{0} is not a positive root")]
    NotARoot(String),

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("hom-matrix is singular")]
    HomMatrixSingular,

    #[error("no nonnegative integer solution for the multiplicities")]
    NoNonnegativeSolution,

    #[error("certificate check failed after {0} attempts: {1}")]
    VerificationFailed(usize, String),

    #[error("negative Ext dimension {0}")]
    NegativeExt(i64),

    #[error("internal check failed: {0}")]
    Assertion(String),

    #[error("route disagreement: {0}")]
    RouteDisagreement(String),

    #[error("class is not a cocycle")]
    NotCocycle,

    #[error("morphism is not surjective")]
    NotSurjective,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no majority among {trials} trials; candidates: {candidates:?}")]
    NoMajority {
        trials: usize,
        candidates: Vec<(String, usize)>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
