use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ground set must have at least one element")]
    EmptyGround,
    #[error("label {label} out of range for ground set of size {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("set is not a member of the family")]
    NotAMember,
    #[error("weights must be non-negative and sum to exactly 1 (sum is {0})")]
    NotAMean(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is zero")]
    ZeroVector,
    #[error("malformed family spec: {0}")]
    MalformedSpec(String),
    #[error("invalid interval set: {0}")]
    InvalidInterval(String),
    #[error("operation needs single-interval sets; label {0} has several pieces")]
    NotSingleInterval(usize),
    #[error("instance too large for exhaustive search: {0}")]
    ScaleExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("order is not a permutation of the ground set")]
    InvalidPermutation,
}
