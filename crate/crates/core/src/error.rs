use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("cannot multiply two module elements")]
    BothModules,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial has rational-function coefficients")]
    RationalFunctionCoefficients,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("infinite staircase")]
    InfiniteStaircase,
    #[error("ordering {0} is not an elimination ordering for the differential block")]
    NotElimination(String),
    #[error("the input is not primary to the point {0}")]
    CenterNotZero(String),
    #[error("operators do not span a closed subspace")]
    NotClosed,
    #[error("linear system has only {found} independent solutions, expected {expected}")]
    Unsolvable { found: usize, expected: usize },
    #[error("iteration cap of {cap} multiplications reached without stabilizing at {expected} coefficient rows")]
    IterationCap { cap: usize, expected: usize },
    #[error("ideal is not in normal position: {0}")]
    NotNormalPosition(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid ordering: {0}")]
    InvalidOrder(String),
    #[error("ep-solution needs a components clause")]
    MissingDecomposition,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
