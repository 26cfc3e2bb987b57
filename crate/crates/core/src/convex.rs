//! Max-affine convex functions.
//!
//! `f(x) = max_i (<a_i, x> + b_i)` with finitely many pieces is the
//! crate's canonical finite-everywhere convex function: evaluation is a
//! finite max, the subdifferential is the convex hull of the active slopes,
//! and the epigraph is a half-space intersection. Extended-valued convex
//! functions (with domain constraints) are handled only through epigraph
//! sets, see [`crate::cones::epi_to_value`].


use crate::error::Error;
use crate::poly::{HPolyhedron, VPolyhedron};
use crate::scalar::Scalar;
use crate::vector::Vector;

/// `f(x) = max_i (<a_i, x> + b_i)`, at least one piece. Convex, finite
/// everywhere, lower semicontinuous; sublinear when representable with all
/// `b_i = 0` (then `f(0) = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxAffine<S> {
    pieces: Vec<(Vector<S>, S)>,
    dim: usize,
}

impl<S: Scalar> MaxAffine<S> {
    pub fn new(pieces: Vec<(Vector<S>, S)>, dim: usize) -> Result<Self, Error<S>> {
        if pieces.is_empty() {
            return Err(Error::EmptySet);
        }
        for (a, _) in &pieces {
            Error::check_dims(dim, a.dim())?;
        }
        Ok(MaxAffine { pieces, dim })
    }

    /// The constant function `x -> c`.
    pub fn constant(c: S, dim: usize) -> Self {
        MaxAffine {
            pieces: vec![(Vector::zero(dim), c)],
            dim,
        }
    }

    pub fn pieces(&self) -> &[(Vector<S>, S)] {
        &self.pieces
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact evaluation: the maximum over all pieces.
    pub fn evaluate(&self, x: &Vector<S>) -> Result<S, Error<S>> {
        Error::check_dims(self.dim, x.dim())?;
        Ok(self
            .pieces
            .iter()
            .map(|(a, b)| a.inner_unchecked(x) + b.clone())
            .max()
            .expect("at least one piece"))
    }

    /// Indices of the pieces attaining the max at `x`. Ties are kept: with
    /// exact arithmetic they are meaningful, not noise.
    pub fn active_pieces(&self, x: &Vector<S>) -> Result<Vec<usize>, Error<S>> {
        let fx = self.evaluate(x)?;
        Ok(self
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a.inner_unchecked(x) + b.clone() == fx)
            .map(|(i, _)| i)
            .collect())
    }

    /// The subdifferential at `x`: the convex hull of the active slopes.
    /// Nonempty for every `x` since some piece always attains the max.
    pub fn subdifferential(&self, x: &Vector<S>) -> Result<VPolyhedron<S>, Error<S>> {
        let active = self.active_pieces(x)?;
        let vertices = active
            .into_iter()
            .map(|i| self.pieces[i].0.clone())
            .collect();
        VPolyhedron::polytope(vertices, self.dim)
    }

    /// The epigraph `{(x, l) : f(x) <= l}` as half-spaces
    /// `<(a_i, -1), (x, l)> <= -b_i` in dimension `dim + 1`.
    pub fn epigraph(&self) -> HPolyhedron<S> {
        let rows = self
            .pieces
            .iter()
            .map(|(a, b)| (a.with_appended(-S::one()), -b.clone()))
            .collect();
        HPolyhedron::new(rows, self.dim + 1).expect("rows lifted to dim + 1")
    }
}

/// The support function `s(x) = max over vertices d of <d, x>` of a
/// polytope in dual space, as a max-affine function with all offsets zero.
/// `s` is sublinear and `s(0) = 0`. Rays are rejected: they would make the
/// support function extended-valued, outside the max-affine class.
pub fn sublinear_from_polytope<S: Scalar>(
    d: &VPolyhedron<S>,
) -> Result<MaxAffine<S>, Error<S>> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    if !d.is_bounded_representation() {
        return Err(Error::HasRays);
    }
    let pieces = d
        .vertices()
        .iter()
        .map(|v| (v.clone(), S::zero()))
        .collect();
    MaxAffine::new(pieces, d.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;
    use crate::{rat, ratvec, Rat};

    pub(crate) fn abs() -> MaxAffine<Rat> {
        MaxAffine::new(
            vec![(ratvec(&[1]), rat(0, 1)), (ratvec(&[-1]), rat(0, 1))],
            1,
        )
        .unwrap()
    }

    fn hinge() -> MaxAffine<Rat> {
        // max(0, x - 1)
        MaxAffine::new(
            vec![(ratvec(&[0]), rat(0, 1)), (ratvec(&[1]), rat(-1, 1))],
            1,
        )
        .unwrap()
    }

    #[test]
    fn evaluates_abs() {
        assert_eq!(abs().evaluate(&ratvec(&[-3])).unwrap(), rat(3, 1));
    }

    #[test]
    fn evaluates_hinge() {
        assert_eq!(hinge().evaluate(&ratvec(&[2])).unwrap(), rat(1, 1));
        assert_eq!(hinge().evaluate(&ratvec(&[0])).unwrap(), rat(0, 1));
    }

    #[test]
    fn single_piece_is_affine() {
        let f = MaxAffine::new(vec![(ratvec(&[2, -1]), rat(1, 2))], 2).unwrap();
        let x = ratvec(&[3, 4]);
        assert_eq!(f.evaluate(&x).unwrap(), rat(5, 2));
    }

    #[test]
    fn subdifferential_of_abs_at_zero_is_interval() {
        let sd = abs().subdifferential(&ratvec(&[0])).unwrap();
        assert_eq!(sd.vertices(), &[ratvec(&[1]), ratvec(&[-1])]);
    }

    #[test]
    fn subdifferential_of_abs_away_from_kink_is_singleton() {
        let sd = abs().subdifferential(&ratvec(&[2])).unwrap();
        assert_eq!(sd.vertices(), &[ratvec(&[1])]);
    }

    #[test]
    fn subdifferential_satisfies_subgradient_inequality_on_grid() {
        // Definitional oracle for the hinge at the kink: every reported
        // slope s satisfies f(y) >= f(1) + s (y - 1) on an integer grid.
        let f = hinge();
        let x = ratvec(&[1]);
        let fx = f.evaluate(&x).unwrap();
        let sd = f.subdifferential(&x).unwrap();
        assert_eq!(sd.vertices(), &[ratvec(&[0]), ratvec(&[1])]);
        for g in sd.vertices() {
            for y in -3..=3 {
                let y = ratvec(&[y]);
                let lhs = f.evaluate(&y).unwrap();
                let rhs = fx.clone() + (&y - &x).inner(g).unwrap();
                assert!(lhs >= rhs, "subgradient inequality failed at {y}");
            }
        }
    }

    #[test]
    fn epigraph_rows_of_abs() {
        let epi = abs().epigraph();
        assert_eq!(
            epi.rows(),
            &[
                (ratvec(&[1, -1]), rat(0, 1)),
                (ratvec(&[-1, -1]), rat(0, 1)),
            ]
        );
    }

    #[test]
    fn epigraph_of_zero_function() {
        let f = MaxAffine::constant(rat(0, 1), 1);
        let epi = f.epigraph();
        assert_eq!(epi.rows(), &[(ratvec(&[0, -1]), rat(0, 1))]);
    }

    #[test]
    fn graph_point_lies_on_epigraph_boundary() {
        let f = hinge();
        for xv in [-2i64, 0, 1, 3] {
            let x = ratvec(&[xv]);
            let fx = f.evaluate(&x).unwrap();
            let lifted = x.with_appended(fx.clone());
            let epi = f.epigraph();
            assert!(epi.member(&lifted).unwrap());
            assert!(!epi.tight_rows(&lifted).unwrap().is_empty());
            // Any point strictly below violates some row.
            let below = x.with_appended(fx - rat(1, 7));
            assert!(!epi.member(&below).unwrap());
        }
    }

    #[test]
    fn sublinear_from_interval_is_abs() {
        let d = VPolyhedron::polytope(vec![ratvec(&[-1]), ratvec(&[1])], 1).unwrap();
        let s = sublinear_from_polytope(&d).unwrap();
        assert_eq!(s.evaluate(&ratvec(&[-5])).unwrap(), rat(5, 1));
        assert_eq!(s.evaluate(&ratvec(&[0])).unwrap(), rat(0, 1));
    }

    #[test]
    fn sublinear_from_singleton_is_linear() {
        let d = VPolyhedron::polytope(vec![ratvec(&[2, 3])], 2).unwrap();
        let s = sublinear_from_polytope(&d).unwrap();
        assert_eq!(s.evaluate(&ratvec(&[1, 1])).unwrap(), rat(5, 1));
        assert_eq!(s.evaluate(&ratvec(&[-1, -1])).unwrap(), rat(-5, 1));
    }

    #[test]
    fn sublinear_matches_support_value() {
        let d = VPolyhedron::polytope(
            vec![ratvec(&[1, 0]), ratvec(&[0, 2]), ratvec(&[-1, -1])],
            2,
        )
        .unwrap();
        let s = sublinear_from_polytope(&d).unwrap();
        for x in [ratvec(&[1, 1]), ratvec(&[-3, 2]), ratvec(&[0, 0])] {
            assert_eq!(
                Extended::Finite(s.evaluate(&x).unwrap()),
                d.support_value(&x).unwrap()
            );
        }
    }

    #[test]
    fn sublinear_rejects_rays_and_empty() {
        let with_ray =
            VPolyhedron::new(vec![ratvec(&[0])], vec![ratvec(&[1])], 1).unwrap();
        assert!(matches!(
            sublinear_from_polytope(&with_ray),
            Err(Error::HasRays)
        ));
        let empty = VPolyhedron::<Rat>::polytope(vec![], 1).unwrap();
        assert!(matches!(
            sublinear_from_polytope(&empty),
            Err(Error::EmptySet)
        ));
    }
}
