use thiserror::Error;

use crate::polyring::VarSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable sets differ: {0} vs {1}")]
    VarSpecMismatch(VarSpec, VarSpec),

    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    PolyParse { pos: usize, msg: String },

    #[error("divisor is zero")]
    ZeroDivisor,

    #[error("divisibility test only supports integers and differences of two variables, got `{0}`")]
    UnsupportedDivisor(String),

    #[error("invalid index sequence `{0}`: {1}")]
    InvalidIndex(String, String),

    #[error("index {index} exceeds n = {n}")]
    IndexOutOfRange { index: String, n: usize },

    #[error("index {index} has length {len}, expected k = {k}")]
    WrongLength { index: String, len: usize, k: usize },

    #[error("invalid bitstring `{0}`: {1}")]
    InvalidBitstring(String, String),

    #[error("invalid dimensions n = {n}, k = {k}: need 1 <= k <= n")]
    InvalidDimensions { n: usize, k: usize },

    #[error("epsilon^0 is not an element of M(p)")]
    ZeroExponent,

    #[error("expected {expected:?} basis, got {got:?}")]
    BasisMismatch { expected: crate::wedge::Basis, got: crate::wedge::Basis },

    #[error("operation requires torus mode")]
    NotTorus,

    #[error("fixed point index {i} out of range for n = {n}")]
    ClassIndex { i: usize, n: usize },

    #[error("inexact division in oracle: {0}")]
    InexactDivision(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
