//! Polyhedra in generator and half-space representation.
//!
//! A [`VPolyhedron`] is `conv(vertices) + cone(rays)`; an [`HPolyhedron`]
//! is a finite intersection of half-spaces `<a_j, x> <= b_j`. Generator
//! sets are never converted to half-space form — every query on them is a
//! definitional finite check or a single LP over combination coefficients.
//! Redundant generators are allowed and never pruned; set semantics are
//! unaffected.


use crate::error::Error;
use crate::lp::lp_feasible_point;
use crate::scalar::{Extended, Scalar};
use crate::vector::Vector;

/// `conv(vertices) + cone(rays)`. Nonempty requires at least one vertex.
/// Finitely generated sets are automatically convex and closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron<S> {
    vertices: Vec<Vector<S>>,
    rays: Vec<Vector<S>>,
    dim: usize,
}

impl<S: Scalar> VPolyhedron<S> {
    pub fn new(
        vertices: Vec<Vector<S>>,
        rays: Vec<Vector<S>>,
        dim: usize,
    ) -> Result<Self, Error<S>> {
        for v in vertices.iter().chain(rays.iter()) {
            Error::check_dims(dim, v.dim())?;
        }
        Ok(VPolyhedron {
            vertices,
            rays,
            dim,
        })
    }

    /// Polytope spanned by the given points (no rays).
    pub fn polytope(vertices: Vec<Vector<S>>, dim: usize) -> Result<Self, Error<S>> {
        Self::new(vertices, Vec::new(), dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector<S>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vector<S>] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded_representation(&self) -> bool {
        self.rays.is_empty()
    }

    fn require_nonempty(&self) -> Result<(), Error<S>> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    /// Support value `sigma_C(x*) = sup_{x in C} <x, x*>`.
    ///
    /// `+inf` exactly when some ray points along `x*`; otherwise the maximum
    /// over the vertices.
    pub fn support_value(&self, xstar: &Vector<S>) -> Result<Extended<S>, Error<S>> {
        self.require_nonempty()?;
        Error::check_dims(self.dim, xstar.dim())?;
        for r in &self.rays {
            if r.inner_unchecked(xstar) > S::zero() {
                return Ok(Extended::PosInf);
            }
        }
        let max = self
            .vertices
            .iter()
            .map(|v| v.inner_unchecked(xstar))
            .max()
            .expect("nonempty vertex list");
        Ok(Extended::Finite(max))
    }

    /// Barrier cone membership: `sup_{x in C} <x, x*> < +inf`, i.e.
    /// `<r, x*> <= 0` for every ray.
    pub fn barrier_member(&self, xstar: &Vector<S>) -> Result<bool, Error<S>> {
        Ok(self.support_value(xstar)?.is_finite())
    }

    /// Recession cone membership: `d` with `C + R_+ d = C`, i.e. `d` is a
    /// nonnegative combination of the rays.
    pub fn recession_member(&self, d: &Vector<S>) -> Result<bool, Error<S>> {
        self.require_nonempty()?;
        Error::check_dims(self.dim, d.dim())?;
        cone_member(d, &self.rays)
    }

    /// Exact membership `x in conv(vertices) + cone(rays)`, decided by LP
    /// feasibility over the combination coefficients.
    pub fn member(&self, x: &Vector<S>) -> Result<bool, Error<S>> {
        Error::check_dims(self.dim, x.dim())?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(combination_coefficients(&self.vertices, &self.rays, x, true)?.is_some())
    }

    /// Euclidean projection of `z` onto a polytope, exact.
    ///
    /// Active-set search over vertex subsets of at most `dim + 1` vertices:
    /// for each affinely independent subset the normal equations give the
    /// projection onto its affine hull; the candidate is accepted when its
    /// barycentric coefficients are nonnegative and the variational
    /// inequality `<v - p, z - p> <= 0` holds at every vertex. Uniqueness of
    /// the projection makes the result independent of the search order.
    pub fn project(&self, z: &Vector<S>) -> Result<Vector<S>, Error<S>> {
        self.require_nonempty()?;
        if !self.rays.is_empty() {
            return Err(Error::UnboundedSet);
        }
        Error::check_dims(self.dim, z.dim())?;

        if self.member(z)? {
            return Ok(z.clone());
        }

        let m = self.vertices.len();
        let max_size = (self.dim + 1).min(m);
        let mut subset: Vec<usize> = Vec::new();
        for size in 1..=max_size {
            subset.clear();
            subset.extend(0..size);
            loop {
                if let Some(p) = self.project_on_subset(z, &subset) {
                    return Ok(p);
                }
                if !next_subset(&mut subset, m) {
                    break;
                }
            }
        }
        unreachable!("projection onto a nonempty polytope always exists")
    }

    /// Projection candidate from one vertex subset, or `None` when the
    /// subset is affinely dependent, the coefficients leave the simplex, or
    /// the variational inequality fails at some vertex.
    fn project_on_subset(&self, z: &Vector<S>, subset: &[usize]) -> Option<Vector<S>> {
        let v0 = &self.vertices[subset[0]];
        let k = subset.len() - 1;
        let p = if k == 0 {
            v0.clone()
        } else {
            let dirs: Vec<Vector<S>> = subset[1..]
                .iter()
                .map(|&i| &self.vertices[i] - v0)
                .collect();
            let gram: Vec<Vec<S>> = dirs
                .iter()
                .map(|di| dirs.iter().map(|dj| di.inner_unchecked(dj)).collect())
                .collect();
            let rhs: Vec<S> = dirs
                .iter()
                .map(|di| di.inner_unchecked(&(z - v0)))
                .collect();
            let t = crate::linalg::solve_square(&gram, &rhs)?;
            let mut sum = S::zero();
            for ti in &t {
                if *ti < S::zero() {
                    return None;
                }
                sum = sum + ti.clone();
            }
            if sum > S::one() {
                return None;
            }
            let mut p = v0.clone();
            for (ti, di) in t.iter().zip(dirs.iter()) {
                p = &p + &di.scale(ti);
            }
            p
        };

        let residual = z - &p;
        for v in &self.vertices {
            if (v - &p).inner_unchecked(&residual) > S::zero() {
                return None;
            }
        }
        Some(p)
    }
}

/// Intersection of half-spaces `<normal, x> <= offset`. An empty row list
/// is the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron<S> {
    rows: Vec<(Vector<S>, S)>,
    dim: usize,
}

impl<S: Scalar> HPolyhedron<S> {
    pub fn new(rows: Vec<(Vector<S>, S)>, dim: usize) -> Result<Self, Error<S>> {
        for (normal, _) in &rows {
            Error::check_dims(dim, normal.dim())?;
        }
        Ok(HPolyhedron { rows, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vector<S>, S)] {
        &self.rows
    }

    /// Row-by-row membership test.
    pub fn member(&self, x: &Vector<S>) -> Result<bool, Error<S>> {
        Error::check_dims(self.dim, x.dim())?;
        Ok(self
            .rows
            .iter()
            .all(|(a, b)| a.inner_unchecked(x) <= *b))
    }

    /// Indices of the rows tight at `x`.
    pub fn tight_rows(&self, x: &Vector<S>) -> Result<Vec<usize>, Error<S>> {
        Error::check_dims(self.dim, x.dim())?;
        Ok(self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a.inner_unchecked(x) == *b)
            .map(|(j, _)| j)
            .collect())
    }

    /// Recession cone membership: `<a_j, d> <= 0` for every row.
    pub fn recession_member(&self, d: &Vector<S>) -> Result<bool, Error<S>> {
        Error::check_dims(self.dim, d.dim())?;
        Ok(self
            .rows
            .iter()
            .all(|(a, _)| a.inner_unchecked(d) <= S::zero()))
    }

    pub fn is_feasible(&self) -> Result<bool, Error<S>> {
        Ok(lp_feasible_point(self)?.is_some())
    }
}

/// Membership of `d` in `cone(generators)`: existence of nonnegative
/// multipliers with `sum lambda_g g = d`, decided by LP feasibility. The
/// zero vector is the empty sum, so it belongs to every cone.
pub fn cone_member<S: Scalar>(
    d: &Vector<S>,
    generators: &[Vector<S>],
) -> Result<bool, Error<S>> {
    for g in generators {
        Error::check_dims(d.dim(), g.dim())?;
    }
    Ok(combination_coefficients(&[], generators, d, false)?.is_some())
}

/// Feasibility of `x = sum mu_i v_i + sum nu_j r_j`, `mu, nu >= 0`, and
/// when `affine` additionally `sum mu_i = 1`. Encoded as an LP over the
/// coefficient vector (equalities as paired inequalities) and solved with
/// the exact simplex; returns the multipliers found.
fn combination_coefficients<S: Scalar>(
    vertices: &[Vector<S>],
    rays: &[Vector<S>],
    x: &Vector<S>,
    affine: bool,
) -> Result<Option<Vec<S>>, Error<S>> {
    let nv = vertices.len();
    let nr = rays.len();
    let k = nv + nr;
    if k == 0 {
        // Only the empty sum is available: representable iff x = 0 and no
        // convex-combination constraint is in force.
        return Ok((!affine && x.is_zero()).then(Vec::new));
    }
    let n = x.dim();
    let mut rows: Vec<(Vector<S>, S)> = Vec::new();

    // Coordinate equalities sum_g lambda_g g_c = x_c.
    for c in 0..n {
        let coeffs: Vec<S> = vertices
            .iter()
            .chain(rays.iter())
            .map(|g| g[c].clone())
            .collect();
        let row = Vector::new(coeffs);
        rows.push((row.clone(), x[c].clone()));
        rows.push((-&row, -x[c].clone()));
    }
    if affine {
        let ones = Vector::new(
            (0..k)
                .map(|i| if i < nv { S::one() } else { S::zero() })
                .collect(),
        );
        rows.push((ones.clone(), S::one()));
        rows.push((-&ones, -S::one()));
    }
    // Nonnegativity of every multiplier.
    for i in 0..k {
        rows.push((-&Vector::unit(k, i), S::zero()));
    }

    let feasible = HPolyhedron::new(rows, k)?;
    Ok(lp_feasible_point(&feasible)?.map(Vector::into_coords))
}

/// Advance `subset` to the next strictly increasing index tuple below `m`;
/// false when exhausted.
fn next_subset(subset: &mut [usize], m: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < m - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
