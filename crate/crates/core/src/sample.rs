//! Seeded random instance generation.
//!
//! Everything randomized in the crate flows through [`InstanceSampler`]: a
//! ChaCha stream cipher keyed by a user-visible seed, emitting rationals of
//! bounded numerator and denominator. Reports record the seed, so every
//! randomized run is reproducible bit for bit.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::convex::MaxAffine;
use crate::operator::FiniteOperator;
use crate::poly::VPolyhedron;
use crate::vector::Vector;
use crate::{rat, Rat, RatVec};

/// Default bound on generated denominators.
pub const DEFAULT_MAX_DENOMINATOR: i64 = 16;
/// Default bound on the absolute value of generated numerators.
pub const DEFAULT_MAX_NUMERATOR: i64 = 8;

pub struct InstanceSampler {
    rng: ChaCha8Rng,
    max_numerator: i64,
    max_denominator: i64,
}

impl InstanceSampler {
    pub fn new(seed: u64) -> Self {
        InstanceSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_numerator: DEFAULT_MAX_NUMERATOR,
            max_denominator: DEFAULT_MAX_DENOMINATOR,
        }
    }

    pub fn rat(&mut self) -> Rat {
        let num = self.rng.gen_range(-self.max_numerator..=self.max_numerator);
        let den = self.rng.gen_range(1..=self.max_denominator);
        rat(num, den)
    }

    pub fn positive_rat(&mut self) -> Rat {
        let num = self.rng.gen_range(1..=self.max_numerator);
        let den = self.rng.gen_range(1..=self.max_denominator);
        rat(num, den)
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn vector(&mut self, dim: usize) -> RatVec {
        Vector::new((0..dim).map(|_| self.rat()).collect())
    }

    /// A vector scaled up to roughly `radius` times the base range, used
    /// for points well outside a sampled set.
    pub fn vector_scaled(&mut self, dim: usize, radius: i64) -> RatVec {
        let v = self.vector(dim);
        v.scale(&rat(radius, 1))
    }

    /// Random max-affine function with `1..=max_pieces` pieces.
    pub fn max_affine(&mut self, dim: usize, max_pieces: usize) -> MaxAffine<Rat> {
        let count = self.usize_in(1, max_pieces);
        let pieces = (0..count)
            .map(|_| (self.vector(dim), self.rat()))
            .collect();
        MaxAffine::new(pieces, dim).expect("sampled pieces are nonempty and well-dimensioned")
    }

    /// Random polytope with `1..=max_vertices` generator points (possibly
    /// redundant; redundancy is allowed everywhere).
    pub fn polytope(&mut self, dim: usize, max_vertices: usize) -> VPolyhedron<Rat> {
        let count = self.usize_in(1, max_vertices);
        let vertices = (0..count).map(|_| self.vector(dim)).collect();
        VPolyhedron::polytope(vertices, dim).expect("sampled vertices are well-dimensioned")
    }

    /// Sample the subdifferential graph of `f` at `points` random points:
    /// each pair takes a random vertex of the subdifferential polytope.
    pub fn subdifferential_sample(
        &mut self,
        f: &MaxAffine<Rat>,
        points: usize,
    ) -> FiniteOperator<Rat> {
        let mut pairs = Vec::with_capacity(points);
        for _ in 0..points {
            let x = self.vector(f.dim());
            let sd = f.subdifferential(&x).expect("dimension matches");
            let pick = self.usize_in(0, sd.vertices().len() - 1);
            pairs.push((x, sd.vertices()[pick].clone()));
        }
        FiniteOperator::new(pairs, f.dim()).expect("sampled pairs are well-dimensioned")
    }

    /// Random operator satisfying the normal-cone hypotheses by
    /// construction: pairs `(p, t (z - p))` with `p` the projection of a
    /// random `z` onto a random polytope and `t > 0`, plus the zero
    /// functional at every domain point.
    pub fn normal_cone_operator(&mut self, dim: usize, rays_per_op: usize) -> FiniteOperator<Rat> {
        let c = self.polytope(dim, 6);
        let mut pairs = Vec::new();
        for _ in 0..rays_per_op {
            let z = self.vector_scaled(dim, 3);
            let p = c
                .project(&z)
                .expect("sampled polytope is nonempty and bounded");
            let normal = &z - &p;
            let t = self.positive_rat();
            pairs.push((p, normal.scale(&t)));
        }
        let augmented: Vec<_> = pairs
            .iter()
            .map(|(p, _)| (p.clone(), Vector::zero(dim)))
            .collect();
        pairs.extend(augmented);
        FiniteOperator::new(pairs, dim).expect("sampled pairs are well-dimensioned")
    }

    /// Random operator satisfying the sublinear hypotheses by construction:
    /// the value set at the origin is the whole vertex list of `d`, and
    /// every other pair maximizes `<., x>` over `d`.
    pub fn support_sample_operator(
        &mut self,
        d: &VPolyhedron<Rat>,
        extra_points: usize,
    ) -> FiniteOperator<Rat> {
        let dim = d.dim();
        let zero = Vector::zero(dim);
        let mut pairs: Vec<(RatVec, RatVec)> = d
            .vertices()
            .iter()
            .map(|v| (zero.clone(), v.clone()))
            .collect();
        for _ in 0..extra_points {
            let x = self.vector(dim);
            let face =
                crate::cones::support_face(d, &x).expect("polytope support values are finite");
            let pick = self.usize_in(0, face.vertices().len() - 1);
            pairs.push((x, face.vertices()[pick].clone()));
        }
        FiniteOperator::new(pairs, dim).expect("sampled pairs are well-dimensioned")
    }

    /// Random generator set in `X x R` satisfying all three epigraph
    /// conditions: random vertices, the upward ray, and side rays kept in
    /// an open half-space (first coordinate positive) above a common affine
    /// minorant. Dropping the upward ray breaks condition (iii); adding the
    /// downward ray breaks condition (ii).
    pub fn epigraph_set(&mut self, dim_x: usize, max_vertices: usize) -> VPolyhedron<Rat> {
        let nv = self.usize_in(1, max_vertices);
        let vertices: Vec<RatVec> = (0..nv).map(|_| self.vector(dim_x + 1)).collect();
        let minorant = self.vector(dim_x);
        let mut rays = vec![Vector::zero(dim_x).with_appended(rat(1, 1))];
        for _ in 0..self.usize_in(0, 2) {
            let mut d = self.vector(dim_x);
            if d[0] <= rat(0, 1) {
                let bumped = d[0].clone() * rat(-1, 1) + rat(1, 1);
                let mut coords = d.clone().into_coords();
                coords[0] = bumped;
                d = Vector::new(coords);
            }
            let slack = self.positive_rat();
            let c = d.inner(&minorant).expect("dims agree") + slack;
            rays.push(d.with_appended(c));
        }
        VPolyhedron::new(vertices, rays, dim_x + 1).expect("generators lifted consistently")
    }
}
