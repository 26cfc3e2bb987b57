//! The scalar abstraction: any totally ordered field with exact arithmetic.

use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};

/// Scalar type for all exact computations.
///
/// The bound set amounts to "ordered field with decidable comparisons":
/// ring/field operations from [`Num`], negation and sign queries from
/// [`Signed`], and a total order. Rationals of any precision qualify;
/// floating point does not (`NaN` breaks `Ord`), which is intentional —
/// nothing in this crate tolerates rounding.
pub trait Scalar:
    Clone + Ord + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + 'static
{
    /// Exact ratio of two machine integers. Panics when `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "ratio denominator must be nonzero");
        Self::from_i64(num).expect("numerator representable")
            / Self::from_i64(den).expect("denominator representable")
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }
}

impl<T> Scalar for T where
    T: Clone + Ord + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + 'static
{
}

/// A scalar extended with `+infinity`, as returned by support and epigraph
/// value queries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Extended<S> {
    Finite(S),
    PosInf,
}

impl<S: Scalar> Extended<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// The finite value, or `None` at `+infinity`.
    pub fn finite(&self) -> Option<&S> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::PosInf => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::PosInf => None,
        }
    }
}

impl<S: fmt::Display> fmt::Display for Extended<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => write!(f, "+inf"),
        }
    }
}
