use thiserror::Error;

use crate::farey::Fraction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse fraction {0:?}: expected \"a/b\" with nonnegative integers")]
    ParseFraction(String),

    #[error("{num}/{den} is not a reduced fraction")]
    NotReduced { num: u64, den: u64 },

    #[error("0/0 is not a fraction")]
    ZeroOverZero,

    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbours(Fraction, Fraction),

    #[error("{value} is outside the allowed range: {expected}")]
    OutOfRange { value: Fraction, expected: &'static str },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("negative coefficient at (i, j) = ({i}, {j}) while computing {context}")]
    NegativeCoefficient { i: u32, j: u32, context: String },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("oracle disagreement at {rho}: {detail}")]
    OracleMismatch { rho: Fraction, detail: String },

    #[error("({i}, {j}) is not a point of the requested line for {rho}")]
    NotOnLine { rho: Fraction, i: i64, j: i64 },

    #[error("closed form undefined for {rho}: {detail}")]
    Undefined { rho: Fraction, detail: String },

    #[error("identity check failed: {0}")]
    Mismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
