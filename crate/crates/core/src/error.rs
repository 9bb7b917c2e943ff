use alloc::string::String;

use crate::scalar::Scalar;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown catalog case {0} (expected 0..=4)")]
    UnknownCase(u32),

    #[error("invalid scalar literal {0:?}")]
    ParseScalar(String),

    #[error("structure constants not antisymmetric at [e{i}, e{j}] component {k}")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("metric is not symmetric at ({row}, {col})")]
    MetricNotSymmetric { row: usize, col: usize },

    #[error("metric is not positive definite (leading minor {order} is {minor})")]
    MetricNotPositiveDefinite { order: usize, minor: Scalar },

    #[error("g(Q, Q) = {norm_squared} >= 1, the Randers function is not a Finsler metric")]
    NormTooLarge { norm_squared: Scalar },

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("vectors do not span a plane")]
    DegeneratePlane,

    #[error("Randers metric is not of Douglas type")]
    NotDouglas,

    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
}
