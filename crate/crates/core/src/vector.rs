//! Exact vectors with the duality product.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};


use crate::error::Error;
use crate::scalar::Scalar;

/// A point of `X`, of `X*`, or of a lifted space `X x R`, with exact
/// coordinates. Two vectors are comparable only at equal dimension; the
/// derived order is lexicographic and is used for deterministic
/// deduplication, never for geometry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vector<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![S::zero(); dim],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut v = Self::zero(dim);
        v.coords[i] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Exact duality product `<x, x*>`.
    pub fn inner(&self, other: &Self) -> Result<S, Error<S>> {
        Error::check_dims(self.dim(), other.dim())?;
        Ok(self.inner_unchecked(other))
    }

    /// Dot product when dimensions are already known to agree.
    pub(crate) fn inner_unchecked(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Vector {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    /// Squared Euclidean norm, exact.
    pub fn norm_sq(&self) -> S {
        self.inner_unchecked(self)
    }

    /// Append one coordinate, lifting `x` to `(x, last)`.
    pub fn with_appended(&self, last: S) -> Self {
        let mut coords = self.coords.clone();
        coords.push(last);
        Vector { coords }
    }

    /// Split `(x, lambda)` into `x` and `lambda`. Panics on dimension 0.
    pub fn split_last(&self) -> (Self, S) {
        let (last, rest) = self.coords.split_last().expect("nonempty vector");
        (
            Vector {
                coords: rest.to_vec(),
            },
            last.clone(),
        )
    }
}

impl<S: Scalar> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        Vector {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul<&S> for &Vector<S> {
    type Output = Vector<S>;
    fn mul(self, rhs: &S) -> Vector<S> {
        self.scale(rhs)
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: fmt::Display> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Compact Debug: coordinates in one tuple, not the derived struct dump.
impl<S: fmt::Debug> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}
