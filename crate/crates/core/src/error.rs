use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight mismatch: |{left}| = {left_weight} but |{right}| = {right_weight}")]
    WeightMismatch {
        left: String,
        left_weight: usize,
        right: String,
        right_weight: usize,
    },

    #[error("invalid hook triple (r={r}, s={s}, n={n}): need 1 <= s <= r and r + s <= n")]
    InvalidHookTriple { r: usize, s: usize, n: usize },

    #[error("permutation acts on {0} points; an even number is required")]
    OddDomain(usize),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("{what}: n = {n} exceeds the supported cap {cap}")]
    AboveCap { what: &'static str, n: usize, cap: usize },

    #[error("pair partition {0} is not in the unitary subset")]
    NotUnitary(String),

    #[error("dimension d must be positive, got {0}")]
    InvalidDimension(i64),

    #[error("d = {d} is below the required minimum {min}")]
    DimensionTooSmall { d: i64, min: i64 },

    #[error("index {index} out of range [1, {d}]")]
    IndexOutOfRange { index: usize, d: i64 },

    #[error("truncation size k = {k} exceeds d = {d}")]
    TruncationTooLarge { k: i64, d: i64 },

    #[error("at least 2 samples are needed, got {0}")]
    TooFewSamples(usize),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("matrix is singular")]
    Singular,

    #[error("expected a polynomial, found non-zero remainder: {0}")]
    NonPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
