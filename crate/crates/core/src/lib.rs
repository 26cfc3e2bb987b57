//! Exact polyhedral convex analysis over an ordered field.
//!
//! Everything in this crate computes with exact scalar arithmetic: verdicts
//! are decidable, and every positive or negative answer comes with a
//! certificate that re-verifies by direct substitution. The intended scalar
//! is [`Rat`] (arbitrary-precision rationals); the algorithms themselves are
//! generic over any ordered field implementing [`Scalar`].
//!
//! The main layers, bottom up:
//!
//! * [`vector`], [`lp`], [`poly`] — exact linear algebra, a simplex solver
//!   with Bland's rule, and generator/half-space polyhedra with support,
//!   barrier, recession, membership and projection queries.
//! * [`operator`] — finite monotone-operator graphs: monotonicity and cyclic
//!   monotonicity with violation certificates, inversion, and the max-affine
//!   potential construction for cyclically monotone data.
//! * [`convex`], [`cones`] — max-affine functions, subdifferentials,
//!   epigraphs, normal cones, support faces, and the epigraph conditions for
//!   generator sets in `X x R`.
//! * [`checks`] — one executable check per named result, emitting
//!   [`checks::CheckReport`]s with hypotheses, conclusions and certificates.
//! * [`sample`], [`selftest`] — seeded random instance generation and the
//!   randomized property suite behind `selftest`.
//! * [`json`] — the on-disk JSON schemas (rationals as `"p/q"` strings).

pub mod checks;
pub mod cones;
pub mod convex;
pub mod error;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod operator;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod selftest;
pub mod vector;

pub use error::Error;
pub use scalar::{Extended, Scalar};
pub use vector::Vector;

/// The toolkit's concrete scalar: arbitrary-precision rationals, always in
/// lowest terms with positive denominator.
pub type Rat = num::BigRational;

/// Exact rational vector; carries primal points, dual points, and lifted
/// `(x, lambda)` pairs alike.
pub type RatVec = Vector<Rat>;

/// Generator-representation polyhedron over [`Rat`].
pub type VPolyhedron = poly::VPolyhedron<Rat>;

/// Half-space-representation polyhedron over [`Rat`].
pub type HPolyhedron = poly::HPolyhedron<Rat>;

/// Finite operator graph over [`Rat`].
pub type FiniteOperator = operator::FiniteOperator<Rat>;

/// Max-affine convex function over [`Rat`].
pub type MaxAffineFunction = convex::MaxAffine<Rat>;

/// Construct a [`Rat`] from an integer numerator and denominator.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational denominator must be nonzero");
    Rat::new(num.into(), den.into())
}

/// Construct a [`RatVec`] from integer coordinates.
pub fn ratvec(coords: &[i64]) -> RatVec {
    Vector::new(coords.iter().map(|&c| rat(c, 1)).collect())
}
