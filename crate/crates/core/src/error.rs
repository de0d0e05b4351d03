use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid cut {cut:?}: {reason}")]
    InvalidCut { cut: [u32; 4], reason: String },
    #[error("invalid boundary condition: {0}")]
    InvalidBoundary(String),
    #[error("singular evaluation point: {0}")]
    SingularPoint(String),
    #[error("resampling exhausted after {0} attempts")]
    ResampleExhausted(usize),
    #[error("size cap exceeded: {what} = {value} > {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("index {index} outside admissible window [{lo}, {hi}]")]
    Window { index: usize, lo: usize, hi: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
