//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two `PrecisionReal` intervals overlap, so their ordering cannot be
    /// decided without more precision.
    #[error("indeterminate comparison: intervals {0} and {1} overlap")]
    IndeterminateComparison(String, String),

    /// Requested tolerance is below the granularity of the working precision.
    #[error("tolerance {tol} unachievable at {bits} fractional bits")]
    ToleranceUnachievable { tol: String, bits: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    /// Division where the divisor interval contains zero.
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,

    /// Codeword enumeration refused: dimension beyond the configured limit.
    #[error("dimension too large: k = {k} exceeds enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },

    #[error("generator matrix rows are linearly dependent over GF(2)")]
    RankDeficient,

    /// MacWilliams transform of an unrealizable distribution.
    #[error("non-integer MacWilliams transform result at weight {w}")]
    NonIntegerTransform { w: usize },

    #[error("odd weight {w} present; square-root substitution would not be polynomial")]
    OddWeightPresent { w: usize },

    /// Input polynomial is not a rational combination of h(t)^0..h(t)^l.
    #[error("polynomial is not in the span of h^0..h^{l}")]
    NotInSpan { l: usize },

    #[error("catalog parse error at line {line}: {msg}")]
    CatalogParse { line: usize, msg: String },

    #[error("catalog entry '{name}' invalid: {msg}")]
    CatalogInvalid { name: String, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A monotone solve never bracketed its target.
    #[error("root not bracketed: {0}")]
    NotBracketed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
