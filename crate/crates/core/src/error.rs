use thiserror::Error;

use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {text:?} over {field}: {reason}")]
    ScalarParse {
        text: String,
        field: Field,
        reason: String,
    },
    #[error("{field} has no primitive {order}-th root of unity")]
    NoRootOfUnity { field: Field, order: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unbound index {0:?} in contraction plan")]
    UnboundIndex(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("no antipode: {0}")]
    NoAntipode(String),
    #[error("operation requires an ordinary (trivially braided) Hopf algebra")]
    BraidedUnsupported,
    #[error("invalid Yetter-Drinfeld data: {0}")]
    YetterDrinfeld(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("not group-like: {0}")]
    NotGroupLike(String),
    #[error("structural precondition failed: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
