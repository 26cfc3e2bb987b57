//! Error type shared across the crate.

use crate::operator::CycleViolation;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error<S: Scalar> {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("operation requires a bounded set, but the set has rays")]
    UnboundedSet,

    #[error("point does not belong to the set")]
    PointNotInSet,

    #[error("support value is +inf in this direction")]
    SupportUnbounded,

    #[error("polytope in dual space must not have rays")]
    HasRays,

    #[error("set does not satisfy the epigraph conditions (i: {cond_i}, ii: {cond_ii}, iii: {cond_iii})")]
    ConditionsNotMet {
        cond_i: bool,
        cond_ii: bool,
        cond_iii: bool,
    },

    #[error("operator is not cyclically monotone: cycle {:?} has sum {}", .0.indices, .0.cycle_sum)]
    NotCyclicallyMonotone(CycleViolation<S>),

    #[error("operator has no pairs")]
    EmptyOperator,
}

impl<S: Scalar> Error<S> {
    pub(crate) fn check_dims(expected: usize, got: usize) -> Result<(), Self> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got })
        }
    }
}
