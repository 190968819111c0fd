//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),

    #[error("zero annihilation index k = 0")]
    ZeroAlphaIndex,

    #[error("box ({0},{1}) outside the Young diagram")]
    BoxOutsideDiagram(usize, usize),

    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series constant term is not invertible")]
    NonInvertibleConstantTerm,

    #[error("insufficient coefficients: have {have}, need {need}")]
    InsufficientCoefficients { have: usize, need: usize },

    #[error("no rational form of degree <= {0} matches the series")]
    NoRationalForm(usize),

    #[error("eigenvalue resonance: contents of {0} and {1} coincide")]
    Resonance(String, String),

    #[error("powers of the divisor operator do not span at this q-order")]
    SpanFailure,

    #[error("diagonal integrand has a nonzero q^0 term at z-order {0}")]
    NonIntegrableDiagonal(usize),

    #[error("edge term not divisible by psi' + psi''")]
    InexactEdgeDivision,

    #[error("genus {0} outside the supported tier")]
    UnsupportedGenus(u32),

    #[error("unstable pair (g, r) = ({0}, {1})")]
    Unstable(u32, usize),

    #[error("value has nonzero extension coordinates")]
    NonBaseField,

    #[error("rational form has a pole at q = -1")]
    PoleAtMinusOne,

    #[error("z-order {have} too small: need {need}")]
    ZOrderTooSmall { have: usize, need: usize },

    #[error("cache corrupted: {0}")]
    CacheCorrupted(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
