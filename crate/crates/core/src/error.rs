use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter [{k};{d}]: need k >= 1 and d >= 0")]
    InvalidLetter { k: i64, d: i64 },
    #[error("hypothesis `{0}` fails on sampled letters {1}")]
    Hypothesis(String, String),
    #[error("component of weight {weight} exceeds the cutoff {cutoff}")]
    CutoffExceeded { weight: u32, cutoff: u32 },
    #[error("expected a word of lower weight 0, got {0}")]
    NotLwtZero(String),
    #[error("expected a word not starting with b0, got {0}")]
    StartsWithB0(String),
    #[error("k1 + k2 must be even and at least 4, got ({0}, {1})")]
    Parity(u32, u32),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("truncations differ: ({0}, {1}) vs ({2}, {3})")]
    TruncationMismatch(usize, u32, usize, u32),
    #[error("d(a) must be 1 for a polynomial representation")]
    NotNormalized,
    #[error("cutoffs differ: {0} vs {1}")]
    CutoffMismatch(u32, u32),
    #[error("no solution: {0}")]
    Infeasible(String),
    #[error("weight {weight} exceeds the resource limit {limit}")]
    Resource { weight: u32, limit: u32 },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
