//! One executable check per named result, with certificates.
//!
//! Every check validates its hypotheses on the given finite data, runs the
//! construction, and verifies the conclusion, emitting a [`CheckReport`].
//! A conclusion is reported only when all hypotheses hold; every
//! certificate in a report re-verifies by direct substitution using only
//! the exact primitives of the lower layers.
//!
//! Maximal monotonicity is never decided — a finite graph is never maximal.
//! For the structured operators where it matters (normal cones of
//! polytopes, subdifferentials of sampled support functions) the reports
//! carry sampled Minty evidence instead: solvability of `z in (Id + T)(p)`
//! at the sampled points, the finite-dimensional signature of maximality.


use crate::cones::{
    epigraph_conditions, normal_cone_generators, normal_cone_member, normal_cone_member_h,
    NormalVerdict,
};
use crate::convex::{sublinear_from_polytope, MaxAffine};
use crate::error::Error;
use crate::lp::{lp_max, LpOutcome};
use crate::operator::{
    CycleViolation, FiniteOperator, MonotoneVerdict, MonotonicityViolation,
};
use crate::poly::VPolyhedron;
use crate::sample::InstanceSampler;
use crate::scalar::{Extended, Scalar};
use crate::vector::Vector;

/// Identifier of the checked result. The labels double as the `--result`
/// tokens of the command-line interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum CheckId {
    Prop2_1,
    Cor2_2,
    Thm2_3,
    Thm2_5,
    Lem3_1,
    Lem3_2,
    Cor3_3,
    Prop3_4,
    Thm3_5,
    Rationalize,
    MintySample,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Prop2_1,
        CheckId::Cor2_2,
        CheckId::Thm2_3,
        CheckId::Thm2_5,
        CheckId::Lem3_1,
        CheckId::Lem3_2,
        CheckId::Cor3_3,
        CheckId::Prop3_4,
        CheckId::Thm3_5,
        CheckId::Rationalize,
        CheckId::MintySample,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CheckId::Prop2_1 => "Prop2.1",
            CheckId::Cor2_2 => "Cor2.2",
            CheckId::Thm2_3 => "Thm2.3",
            CheckId::Thm2_5 => "Thm2.5",
            CheckId::Lem3_1 => "Lem3.1",
            CheckId::Lem3_2 => "Lem3.2",
            CheckId::Cor3_3 => "Cor3.3",
            CheckId::Prop3_4 => "Prop3.4",
            CheckId::Thm3_5 => "Thm3.5",
            CheckId::Rationalize => "Rationalize",
            CheckId::MintySample => "MintySample",
        }
    }

    pub fn parse(token: &str) -> Option<CheckId> {
        CheckId::ALL.iter().copied().find(|id| id.label() == token)
    }
}

/// A named hypothesis with its verdict and, when it fails, a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis<S> {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<Witness<S>>,
}

impl<S> Hypothesis<S> {
    fn holding(name: &'static str) -> Self {
        Hypothesis {
            name,
            holds: true,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<S> {
    Point(Vector<S>),
    Monotonicity(MonotonicityViolation<S>),
    Cycle(CycleViolation<S>),
}

/// A finite, re-checkable piece of evidence attached to a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<S> {
    /// `xstar in N_C(x)` was decided with verdict `member`.
    NormalMembership {
        x: Vector<S>,
        xstar: Vector<S>,
        member: bool,
    },
    /// The claim `xstar in del f(x)` was decided with verdict `holds`.
    Subgradient {
        x: Vector<S>,
        xstar: Vector<S>,
        holds: bool,
    },
    /// Support maximization: `point in Y` and `<direction, point>` against
    /// `sigma_Y(direction)`. Holds exactly when `member` and the two
    /// values agree.
    SupportMaximizer {
        direction: Vector<S>,
        point: Vector<S>,
        member: bool,
        attained: S,
        support: S,
    },
    /// One Minty sample: `z = point + image` with `image in T(point)`
    /// verified, so `z` is in the range of `Id + T`.
    MintyPoint {
        z: Vector<S>,
        point: Vector<S>,
        image: Vector<S>,
        holds: bool,
    },
    /// Vertical-normal level check at `(x, lambda)`: when `member`, the
    /// level must equal `value = f(x)`.
    LevelEquality {
        x: Vector<S>,
        lambda: S,
        value: S,
        member: bool,
    },
    /// A point `witness` of the set with `<witness - x, xstar> > 0`,
    /// certifying that `xstar` is not normal at `x`.
    Separation {
        x: Vector<S>,
        xstar: Vector<S>,
        witness: Vector<S>,
    },
    /// One epigraph condition with an optional witness vector.
    Condition {
        name: &'static str,
        holds: bool,
        witness: Option<Vector<S>>,
    },
    /// Two generator sets compared by mutual membership at sample `x`.
    SetsMatch { x: Vector<S>, equal: bool },
    /// A constructed set, listed by its generators.
    ConstructedSet {
        name: &'static str,
        vertices: Vec<Vector<S>>,
    },
    /// A nested report (e.g. Minty evidence attached to a theorem check).
    SubReport(Box<CheckReport<S>>),
}

impl<S: Scalar> Certificate<S> {
    /// Whether this certificate records a positive verification.
    pub fn holds(&self) -> bool {
        match self {
            Certificate::NormalMembership { member, .. } => *member,
            Certificate::Subgradient { holds, .. } => *holds,
            Certificate::SupportMaximizer {
                member,
                attained,
                support,
                ..
            } => *member && attained == support,
            Certificate::MintyPoint { holds, .. } => *holds,
            Certificate::LevelEquality {
                lambda,
                value,
                member,
                ..
            } => !member || lambda == value,
            Certificate::Separation { .. } => true,
            Certificate::Condition { holds, .. } => *holds,
            Certificate::SetsMatch { equal, .. } => *equal,
            Certificate::ConstructedSet { .. } => true,
            Certificate::SubReport(report) => report.conclusion == Some(true),
        }
    }
}

/// Outcome of one check: hypotheses, conclusion (absent when a hypothesis
/// failed), certificates, and the seed behind any sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<S> {
    pub result_id: CheckId,
    pub hypotheses: Vec<Hypothesis<S>>,
    pub conclusion: Option<bool>,
    pub certificates: Vec<Certificate<S>>,
    pub deterministic_seed: u64,
}

impl<S> CheckReport<S> {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// Exit-code contract: 0 conclusion true, 2 hypothesis failure,
    /// 3 conclusion false.
    pub fn exit_code(&self) -> u8 {
        match self.conclusion {
            Some(true) => 0,
            Some(false) => 3,
            None => 2,
        }
    }
}

fn monotonicity_hypothesis<S: Scalar>(t: &FiniteOperator<S>) -> Hypothesis<S> {
    match t.is_monotone() {
        MonotoneVerdict::Monotone => Hypothesis::holding("operator is monotone"),
        MonotoneVerdict::Violation(v) => Hypothesis {
            name: "operator is monotone",
            holds: false,
            witness: Some(Witness::Monotonicity(v)),
        },
    }
}

/// Inclusion of a monotone operator carrying the zero functional in every
/// value set into the normal cone operator of its domain hull.
pub fn check_normal_cone_inclusion<S: Scalar>(t: &FiniteOperator<S>) -> CheckReport<S> {
    let mut hypotheses = vec![monotonicity_hypothesis(t)];

    let zero = Vector::zero(t.dim());
    let missing = t
        .domain()
        .into_iter()
        .find(|x| !t.values_at(x).contains(&zero));
    hypotheses.push(Hypothesis {
        name: "zero functional belongs to every value set",
        holds: missing.is_none(),
        witness: missing.map(Witness::Point),
    });

    let mut report = CheckReport {
        result_id: CheckId::Prop2_1,
        hypotheses,
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    if !report.hypotheses_hold() {
        return report;
    }
    if t.is_empty() {
        report.conclusion = Some(true);
        return report;
    }

    let c = VPolyhedron::polytope(t.domain(), t.dim()).expect("domain points share dim");
    let mut all = true;
    for (x, xstar) in t.pairs() {
        let member = normal_cone_member(&c, x, xstar).expect("nonempty hull, matching dims");
        all &= member;
        report.certificates.push(Certificate::NormalMembership {
            x: x.clone(),
            xstar: xstar.clone(),
            member,
        });
    }
    report.conclusion = Some(all);
    report
}

/// Shared engine for the support-maximization inclusions: checks that
/// every pair `(x, x*)` of `t` has `x*` in `d` and `<x, x*> = sigma_d(x)`.
fn support_maximizer_certificates<S: Scalar>(
    t: &FiniteOperator<S>,
    d: &VPolyhedron<S>,
) -> (bool, Vec<Certificate<S>>) {
    let mut all = true;
    let mut certs = Vec::new();
    for (x, xstar) in t.pairs() {
        let member = d.member(xstar).expect("matching dims");
        let support = d
            .support_value(x)
            .expect("nonempty polytope")
            .into_finite()
            .expect("polytopes have finite support");
        let attained = x.inner_unchecked(xstar);
        all &= member && attained == support;
        certs.push(Certificate::SupportMaximizer {
            direction: x.clone(),
            point: xstar.clone(),
            member,
            attained,
            support,
        });
    }
    (all, certs)
}

fn range_equals_value_at_zero<S: Scalar>(t: &FiniteOperator<S>) -> Hypothesis<S> {
    let zero = Vector::zero(t.dim());
    let at_zero = t.values_at(&zero);
    let outside = t.range().into_iter().find(|v| !at_zero.contains(v));
    Hypothesis {
        name: "range equals the value set at the origin",
        holds: outside.is_none(),
        witness: outside.map(Witness::Point),
    }
}

/// Inclusion of a monotone operator with `range T = T(0)` into the
/// subdifferential of the support function of `conv T(0)`.
pub fn check_support_subdifferential_inclusion<S: Scalar>(
    t: &FiniteOperator<S>,
) -> CheckReport<S> {
    let hypotheses = vec![monotonicity_hypothesis(t), range_equals_value_at_zero(t)];
    let mut report = CheckReport {
        result_id: CheckId::Cor2_2,
        hypotheses,
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    if !report.hypotheses_hold() {
        return report;
    }
    if t.is_empty() {
        report.conclusion = Some(true);
        return report;
    }

    let d = VPolyhedron::polytope(t.values_at(&Vector::zero(t.dim())), t.dim())
        .expect("value points share dim");
    let (all, certs) = support_maximizer_certificates(t, &d);
    report.certificates = certs;
    report.conclusion = Some(all);
    report
}

/// Characterization of normal cone operators: the inclusion check plus the
/// candidate set `C = conv dom T`, zero-normality at its vertices, and
/// sampled Minty evidence on `N_C`.
pub fn check_normal_cone_characterization<S: Scalar>(
    t: &FiniteOperator<S>,
    minty_samples: usize,
    seed: u64,
) -> CheckReport<S> {
    let inner = check_normal_cone_inclusion(t);
    let mut report = CheckReport {
        result_id: CheckId::Thm2_3,
        hypotheses: inner.hypotheses,
        conclusion: None,
        certificates: inner.certificates,
        deterministic_seed: seed,
    };
    if !report.hypotheses_hold() {
        return report;
    }
    let Some(mut ok) = inner.conclusion else {
        return report;
    };
    if t.is_empty() {
        report.conclusion = Some(ok);
        return report;
    }

    let c = VPolyhedron::polytope(t.domain(), t.dim()).expect("domain points share dim");
    report.certificates.push(Certificate::ConstructedSet {
        name: "candidate set conv(dom T)",
        vertices: c.vertices().to_vec(),
    });
    // Reverse-direction sanity: the zero functional is normal at every
    // vertex of the candidate set.
    let zero = Vector::zero(t.dim());
    for v in c.vertices() {
        let member = normal_cone_member(&c, v, &zero).expect("vertex of the hull");
        ok &= member;
        report.certificates.push(Certificate::NormalMembership {
            x: v.clone(),
            xstar: zero.clone(),
            member,
        });
    }

    let zs = sample_points_around(c.dim(), minty_samples, seed);
    let minty = minty_sample(&c, &zs, seed).expect("candidate hull is a nonempty polytope");
    ok &= minty.conclusion == Some(true);
    report
        .certificates
        .push(Certificate::SubReport(Box::new(minty)));
    report.conclusion = Some(ok);
    report
}

/// Characterization of subdifferentials of sublinear functions: the
/// support-maximization inclusion plus the candidate function
/// `s = sigma_{conv T(0)}` with `T` contained in its subdifferential, and
/// sampled Minty evidence for `del s`.
pub fn check_sublinear_characterization<S: Scalar>(
    t: &FiniteOperator<S>,
    minty_samples: usize,
    seed: u64,
) -> CheckReport<S> {
    let inner = check_support_subdifferential_inclusion(t);
    let mut report = CheckReport {
        result_id: CheckId::Thm2_5,
        hypotheses: inner.hypotheses,
        conclusion: None,
        certificates: inner.certificates,
        deterministic_seed: seed,
    };
    if !report.hypotheses_hold() {
        return report;
    }
    let Some(mut ok) = inner.conclusion else {
        return report;
    };
    if t.is_empty() {
        report.conclusion = Some(ok);
        return report;
    }

    let d = VPolyhedron::polytope(t.values_at(&Vector::zero(t.dim())), t.dim())
        .expect("value points share dim");
    let s = sublinear_from_polytope(&d).expect("point hull has no rays");
    report.certificates.push(Certificate::ConstructedSet {
        name: "candidate support set conv(T(0))",
        vertices: d.vertices().to_vec(),
    });
    for (x, xstar) in t.pairs() {
        let holds = s
            .subdifferential(x)
            .expect("dims agree")
            .member(xstar)
            .expect("dims agree");
        ok &= holds;
        report.certificates.push(Certificate::Subgradient {
            x: x.clone(),
            xstar: xstar.clone(),
            holds,
        });
    }

    // Minty evidence for del s: with q the projection of z onto D and
    // p = z - q, the projection inequality says exactly that q maximizes
    // <., p> over D, i.e. q lies in del s(p) and z = p + q.
    let zs = sample_points_around(d.dim(), minty_samples, seed);
    let mut minty = CheckReport {
        result_id: CheckId::MintySample,
        hypotheses: vec![Hypothesis::holding(
            "candidate set is nonempty and bounded",
        )],
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: seed,
    };
    let mut minty_ok = true;
    for z in &zs {
        let q = d.project(z).expect("nonempty bounded");
        let p = z - &q;
        let holds = normal_cone_member(&d, &q, &p).expect("projection lies in the set")
            && s.evaluate(&p).expect("dims agree") == p.inner_unchecked(&q)
            && &(&p + &q) == z;
        minty_ok &= holds;
        minty.certificates.push(Certificate::MintyPoint {
            z: z.clone(),
            point: p,
            image: q,
            holds,
        });
    }
    minty.conclusion = Some(minty_ok);
    ok &= minty_ok;
    report
        .certificates
        .push(Certificate::SubReport(Box::new(minty)));
    report.conclusion = Some(ok);
    report
}

/// Sampled surjectivity of `Id + N_C` on a bounded generator set: each `z`
/// splits as `z = p + (z - p)` with `p` the projection of `z` and
/// `z - p in N_C(p)`, verified definitionally.
pub fn minty_sample<S: Scalar>(
    c: &VPolyhedron<S>,
    zs: &[Vector<S>],
    seed: u64,
) -> Result<CheckReport<S>, Error<S>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    if !c.is_bounded_representation() {
        return Err(Error::UnboundedSet);
    }
    let mut report = CheckReport {
        result_id: CheckId::MintySample,
        hypotheses: vec![Hypothesis::holding("set is nonempty and bounded")],
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: seed,
    };
    let mut ok = true;
    for z in zs {
        let p = c.project(z)?;
        let residual = z - &p;
        let holds = normal_cone_member(c, &p, &residual)? && &(&p + &residual) == z;
        ok &= holds;
        report.certificates.push(Certificate::MintyPoint {
            z: z.clone(),
            point: p,
            image: residual,
            holds,
        });
    }
    report.conclusion = Some(ok);
    Ok(report)
}

/// Deterministic seeded sample cloud in the ambient space, scaled to land
/// both inside and well outside desk-scale sets.
pub fn sample_points_around<S: Scalar>(dim: usize, count: usize, seed: u64) -> Vec<Vector<S>> {
    let mut sampler = InstanceSampler::new(seed);
    (0..count)
        .map(|_| {
            let raw = sampler.vector_scaled(dim, 3);
            Vector::new(
                raw.iter()
                    .map(|q| {
                        S::ratio(
                            q.numer().try_into().expect("sampler numerators are small"),
                            q.denom().try_into().expect("sampler denominators are small"),
                        )
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The dual slice of the normal cone to the epigraph of `f` at
/// `(x, f(x))`: generators with negative last coordinate are scaled onto
/// the `-1` level and their first components returned as a polytope. For
/// max-affine `f` this equals the subdifferential at `x`.
pub fn lift_ax<S: Scalar>(f: &MaxAffine<S>, x: &Vector<S>) -> Result<VPolyhedron<S>, Error<S>> {
    Error::check_dims(f.dim(), x.dim())?;
    let fx = f.evaluate(x)?;
    let lifted = x.with_appended(fx);
    let generators = normal_cone_generators(&f.epigraph(), &lifted)?;
    debug_assert!(
        !generators.is_empty(),
        "a max-affine function always has an active piece"
    );

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for g in generators {
        let (gx, gl) = g.split_last();
        if gl < S::zero() {
            let factor = S::one() / -gl;
            vertices.push(gx.scale(&factor));
        } else {
            debug_assert!(gl.is_zero(), "epigraph normals never point upward");
            rays.push(gx);
        }
    }
    VPolyhedron::new(vertices, rays, f.dim())
}

/// Level lemma at one triple: when `(xstar, -1)` is normal to the epigraph
/// of `f` at `(x, lambda)`, then `lambda = f(x)`. Non-membership makes the
/// claim vacuously true and is certified by a separating point or by
/// `(x, lambda)` lying outside the epigraph.
pub fn check_vertical_normal_level<S: Scalar>(
    f: &MaxAffine<S>,
    x: &Vector<S>,
    lambda: &S,
    xstar: &Vector<S>,
) -> Result<CheckReport<S>, Error<S>> {
    Error::check_dims(f.dim(), x.dim())?;
    Error::check_dims(f.dim(), xstar.dim())?;
    let epi = f.epigraph();
    let lifted_point = x.with_appended(lambda.clone());
    let lifted_normal = xstar.with_appended(-S::one());
    let value = f.evaluate(x)?;

    let mut report = CheckReport {
        result_id: CheckId::Lem3_2,
        hypotheses: Vec::new(),
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    let member = match normal_cone_member_h(&epi, &lifted_point, &lifted_normal)? {
        NormalVerdict::Member => true,
        NormalVerdict::NotInSet => false,
        NormalVerdict::Separated { witness } => {
            report.certificates.push(Certificate::Separation {
                x: lifted_point.clone(),
                xstar: lifted_normal.clone(),
                witness,
            });
            false
        }
    };
    report.certificates.push(Certificate::LevelEquality {
        x: x.clone(),
        lambda: lambda.clone(),
        value: value.clone(),
        member,
    });
    report.conclusion = Some(!member || *lambda == value);
    Ok(report)
}

/// Pointwise agreement of the epigraph normal-cone slice with the
/// subdifferential, by mutual generator membership at each sample.
pub fn check_epi_slice_equals_subdifferential<S: Scalar>(
    f: &MaxAffine<S>,
    sample_xs: &[Vector<S>],
) -> Result<CheckReport<S>, Error<S>> {
    let mut report = CheckReport {
        result_id: CheckId::Cor3_3,
        hypotheses: Vec::new(),
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    let mut all = true;
    for x in sample_xs {
        let equal = slice_matches_subdifferential(f, x)?;
        all &= equal;
        report.certificates.push(Certificate::SetsMatch {
            x: x.clone(),
            equal,
        });
    }
    report.conclusion = Some(all);
    Ok(report)
}

/// Mutual-membership equality of the dual slice and the subdifferential at
/// one point.
pub fn slice_matches_subdifferential<S: Scalar>(
    f: &MaxAffine<S>,
    x: &Vector<S>,
) -> Result<bool, Error<S>> {
    let slice = lift_ax(f, x)?;
    let subdiff = f.subdifferential(x)?;
    for v in slice.vertices() {
        if !subdiff.member(v)? {
            return Ok(false);
        }
    }
    for v in subdiff.vertices() {
        if !slice.member(v)? {
            return Ok(false);
        }
    }
    Ok(slice.rays().is_empty())
}

/// Inclusion of the dual slice of a monotone lifted operator into the
/// subdifferential of the function defined by its upward domain hull.
///
/// The hull `C = conv(dom A) + cone{(0, 1)}` is the smallest finitely
/// generated upward-closed set containing the sampled domain; the epigraph
/// conditions are validated on it, the function comes from the vertical
/// infimum over `C`, and every pair with dual last coordinate `-1` must
/// yield a subgradient, checked on an integer grid of radius `grid_radius`
/// plus the hull's own projected vertices, with the level equality checked
/// at the pair itself.
pub fn check_lifted_operator_subdifferential<S: Scalar>(
    a: &FiniteOperator<S>,
    grid_radius: i64,
) -> Result<CheckReport<S>, Error<S>> {
    if a.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.dim(),
        });
    }
    let n = a.dim() - 1;

    let mut hypotheses = vec![monotonicity_hypothesis(a)];

    let zero = Vector::zero(a.dim());
    let missing = a
        .domain()
        .into_iter()
        .find(|x| !a.values_at(x).contains(&zero));
    hypotheses.push(Hypothesis {
        name: "zero functional belongs to every value set",
        holds: missing.is_none(),
        witness: missing.map(Witness::Point),
    });

    let hull = if a.is_empty() {
        None
    } else {
        let upward = Vector::zero(n).with_appended(S::one());
        Some(VPolyhedron::new(a.domain(), vec![upward], a.dim())?)
    };
    match &hull {
        Some(c) => {
            let conds = epigraph_conditions(c)?;
            hypotheses.push(Hypothesis {
                name: "upward domain hull is nonempty",
                holds: conds.cond_i,
                witness: conds.witness_i.map(Witness::Point),
            });
            hypotheses.push(Hypothesis {
                name: "barrier cone of the hull meets the -1 level",
                holds: conds.cond_ii,
                witness: conds.witness_ii.map(Witness::Point),
            });
            hypotheses.push(Hypothesis {
                name: "upward direction recedes the hull",
                holds: conds.cond_iii,
                witness: None,
            });
        }
        None => hypotheses.push(Hypothesis {
            name: "upward domain hull is nonempty",
            holds: false,
            witness: None,
        }),
    }

    let mut report = CheckReport {
        result_id: CheckId::Prop3_4,
        hypotheses,
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let c = hull.expect("nonempty hypothesis held");

    // Evaluation grid: integer box plus the projected hull vertices.
    let mut grid: Vec<Vector<S>> = Vec::new();
    let mut cursor = vec![-grid_radius; n];
    loop {
        grid.push(Vector::new(
            cursor.iter().map(|&v| S::from_int(v)).collect(),
        ));
        let mut k = 0;
        while k < n {
            cursor[k] += 1;
            if cursor[k] <= grid_radius {
                break;
            }
            cursor[k] = -grid_radius;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    for v in c.vertices() {
        let (vx, _) = v.split_last();
        if !grid.contains(&vx) {
            grid.push(vx);
        }
    }

    let grid_values: Vec<Extended<S>> = grid
        .iter()
        .map(|y| crate::cones::epi_to_value(&c, y).expect("conditions verified"))
        .collect();

    let mut ok = true;
    for (point, dual) in a.pairs() {
        let (x, lambda) = point.split_last();
        let (xstar, mu) = dual.split_last();
        if mu != -S::one() {
            continue;
        }
        let fx = crate::cones::epi_to_value(&c, &x)?;
        let level_ok = fx == Extended::Finite(lambda.clone());
        let mut subgradient_ok = level_ok;
        if let Extended::Finite(fx_val) = &fx {
            report.certificates.push(Certificate::LevelEquality {
                x: x.clone(),
                lambda: lambda.clone(),
                value: fx_val.clone(),
                member: true,
            });
            for (y, fy) in grid.iter().zip(grid_values.iter()) {
                let Extended::Finite(fy) = fy else {
                    continue;
                };
                let bound = fx_val.clone() + (y - &x).inner_unchecked(&xstar);
                if *fy < bound {
                    subgradient_ok = false;
                    break;
                }
            }
        } else {
            subgradient_ok = false;
        }
        ok &= subgradient_ok;
        report.certificates.push(Certificate::Subgradient {
            x,
            xstar,
            holds: subgradient_ok,
        });
    }
    report.conclusion = Some(ok);
    Ok(report)
}

/// Full round trip for one max-affine function: the epigraph satisfies the
/// three conditions (witnessed), and the dual slice of its normal cone
/// operator equals the subdifferential at every sample.
pub fn check_subdifferential_roundtrip<S: Scalar>(
    f: &MaxAffine<S>,
    sample_xs: &[Vector<S>],
) -> Result<CheckReport<S>, Error<S>> {
    let epi = f.epigraph();
    let mut hypotheses = Vec::new();

    // (i) The epigraph is nonempty: the lifted graph point at the origin.
    let origin = Vector::zero(f.dim());
    let witness_i = origin.with_appended(f.evaluate(&origin)?);
    hypotheses.push(Hypothesis {
        name: "epigraph is nonempty",
        holds: epi.member(&witness_i)?,
        witness: Some(Witness::Point(witness_i)),
    });

    // (ii) Some (x*, -1) has finite support over the epigraph; the first
    // piece slope works, certified by a bounded support LP.
    let candidate = f.pieces()[0].0.clone();
    let lifted = candidate.with_appended(-S::one());
    let bounded = matches!(lp_max(&lifted, &epi)?, LpOutcome::Optimal { .. });
    hypotheses.push(Hypothesis {
        name: "barrier cone of the epigraph meets the -1 level",
        holds: bounded,
        witness: Some(Witness::Point(candidate)),
    });

    // (iii) The upward direction recedes the epigraph.
    let upward = Vector::zero(f.dim()).with_appended(S::one());
    hypotheses.push(Hypothesis {
        name: "upward direction recedes the epigraph",
        holds: epi.recession_member(&upward)?,
        witness: None,
    });

    let mut report = CheckReport {
        result_id: CheckId::Thm3_5,
        hypotheses,
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    if !report.hypotheses_hold() {
        return Ok(report);
    }

    let mut all = true;
    for x in sample_xs {
        let equal = slice_matches_subdifferential(f, x)?;
        all &= equal;
        report.certificates.push(Certificate::SetsMatch {
            x: x.clone(),
            equal,
        });
    }
    report.conclusion = Some(all);
    Ok(report)
}

/// Epigraph conditions wrapped as a report, for the verification front end.
pub fn check_epigraph_conditions<S: Scalar>(
    c: &VPolyhedron<S>,
) -> Result<CheckReport<S>, Error<S>> {
    let conds = epigraph_conditions(c)?;
    let certificates = vec![
        Certificate::Condition {
            name: "set is nonempty (convex and closed by representation)",
            holds: conds.cond_i,
            witness: conds.witness_i,
        },
        Certificate::Condition {
            name: "barrier cone meets the -1 level",
            holds: conds.cond_ii,
            witness: conds.witness_ii,
        },
        Certificate::Condition {
            name: "upward direction is a recession direction",
            holds: conds.cond_iii,
            witness: None,
        },
    ];
    Ok(CheckReport {
        result_id: CheckId::Lem3_1,
        hypotheses: Vec::new(),
        conclusion: Some(conds.cond_i && conds.cond_ii && conds.cond_iii),
        certificates,
        deterministic_seed: 0,
    })
}

/// Rationalizability of finite price/supply observations by profit
/// maximization: the law of supply (monotonicity) and `range T = T(0)`
/// admit the production set `Y = conv T(0)`, and every observed supply
/// decision must maximize profit over `Y` at its price.
pub fn rationalize_supply<S: Scalar>(t: &FiniteOperator<S>) -> CheckReport<S> {
    let hypotheses = vec![
        {
            let mut h = monotonicity_hypothesis(t);
            h.name = "law of supply (operator is monotone)";
            h
        },
        range_equals_value_at_zero(t),
    ];
    let mut report = CheckReport {
        result_id: CheckId::Rationalize,
        hypotheses,
        conclusion: None,
        certificates: Vec::new(),
        deterministic_seed: 0,
    };
    if !report.hypotheses_hold() {
        return report;
    }
    if t.is_empty() {
        report.conclusion = Some(true);
        return report;
    }

    let y = VPolyhedron::polytope(t.values_at(&Vector::zero(t.dim())), t.dim())
        .expect("value points share dim");
    report.certificates.push(Certificate::ConstructedSet {
        name: "production set conv(T(0))",
        vertices: y.vertices().to_vec(),
    });
    let (all, certs) = support_maximizer_certificates(t, &y);
    report.certificates.extend(certs);
    report.conclusion = Some(all);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratvec, Rat};

    fn op1(data: &[(i64, i64)]) -> FiniteOperator<Rat> {
        FiniteOperator::new(
            data.iter()
                .map(|&(x, y)| (ratvec(&[x]), ratvec(&[y])))
                .collect(),
            1,
        )
        .unwrap()
    }

    fn abs() -> MaxAffine<Rat> {
        MaxAffine::new(
            vec![(ratvec(&[1]), rat(0, 1)), (ratvec(&[-1]), rat(0, 1))],
            1,
        )
        .unwrap()
    }

    #[test]
    fn check_id_labels_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::parse(id.label()), Some(id));
        }
        assert_eq!(CheckId::parse("Thm9.9"), None);
    }

    #[test]
    fn normal_cone_inclusion_on_interval_operator() {
        // T(0) = {0}, T(1) = {0, 1}: hypotheses hold, C = [0,1], and every
        // pair is normal.
        let t = op1(&[(0, 0), (1, 0), (1, 1)]);
        let report = check_normal_cone_inclusion(&t);
        assert!(report.hypotheses_hold());
        assert_eq!(report.conclusion, Some(true));
        assert_eq!(report.exit_code(), 0);
        assert!(report.certificates.iter().all(Certificate::holds));
    }

    #[test]
    fn normal_cone_inclusion_reports_missing_zero() {
        let t = op1(&[(0, 0), (1, 1)]); // 0 not in T(1)
        let report = check_normal_cone_inclusion(&t);
        assert!(!report.hypotheses_hold());
        assert_eq!(report.conclusion, None);
        assert_eq!(report.exit_code(), 2);
        let failed = &report.hypotheses[1];
        assert!(!failed.holds);
        assert_eq!(failed.witness, Some(Witness::Point(ratvec(&[1]))));
    }

    #[test]
    fn normal_cone_inclusion_reports_monotonicity_violation() {
        let t = op1(&[(0, 0), (1, -1)]);
        let report = check_normal_cone_inclusion(&t);
        assert!(!report.hypotheses[0].holds);
        assert!(matches!(
            report.hypotheses[0].witness,
            Some(Witness::Monotonicity(_))
        ));
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn support_inclusion_on_interval_fan() {
        // T(0) = {-1, 0, 1}: D = [-1, 1], every value is a subgradient of
        // the support function at 0.
        let t = op1(&[(0, -1), (0, 0), (0, 1)]);
        let report = check_support_subdifferential_inclusion(&t);
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn support_inclusion_with_extra_point() {
        let t = op1(&[(0, -1), (0, 0), (0, 1), (1, 1)]);
        let report = check_support_subdifferential_inclusion(&t);
        assert!(report.hypotheses_hold(), "1 lies in T(0)");
        assert_eq!(report.conclusion, Some(true), "<1,1> = 1 = sigma_D(1)");
    }

    #[test]
    fn support_inclusion_rejects_range_mismatch() {
        let t = op1(&[(0, 0), (1, 1)]); // range {0,1} but T(0) = {0}
        let report = check_support_subdifferential_inclusion(&t);
        assert!(!report.hypotheses[1].holds);
        assert_eq!(
            report.hypotheses[1].witness,
            Some(Witness::Point(ratvec(&[1])))
        );
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn normal_cone_characterization_with_minty_evidence() {
        // Sampled from the normal cone of [0,1] with 0 added everywhere.
        let t = op1(&[(0, 0), (0, -1), (1, 0), (1, 2)]);
        let report = check_normal_cone_characterization(&t, 10, 7);
        assert_eq!(report.conclusion, Some(true));
        assert!(report.certificates.iter().any(
            |c| matches!(c, Certificate::SubReport(r) if r.result_id == CheckId::MintySample)
        ));
    }

    #[test]
    fn sublinear_characterization_recovers_abs() {
        // del |.| sampled at -1, 0, 2 with T(0) = {-1, 0, 1}.
        let t = op1(&[(-1, -1), (0, -1), (0, 0), (0, 1), (2, 1)]);
        let report = check_sublinear_characterization(&t, 10, 5);
        assert!(report.hypotheses_hold());
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn sublinear_characterization_of_zero_map() {
        let t = op1(&[(0, 0), (1, 0), (-2, 0)]);
        let report = check_sublinear_characterization(&t, 5, 5);
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn sublinear_characterization_needs_value_at_zero() {
        let t = op1(&[(1, 1)]);
        let report = check_sublinear_characterization(&t, 5, 5);
        assert!(!report.hypotheses_hold());
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn minty_on_the_box() {
        let c = VPolyhedron::polytope(
            vec![
                ratvec(&[-1, -1]),
                ratvec(&[1, -1]),
                ratvec(&[-1, 1]),
                ratvec(&[1, 1]),
            ],
            2,
        )
        .unwrap();
        let zs = vec![ratvec(&[5, 0]), ratvec(&[0, 0])];
        let report = minty_sample(&c, &zs, 0).unwrap();
        assert_eq!(report.conclusion, Some(true));
        match &report.certificates[0] {
            Certificate::MintyPoint { point, image, .. } => {
                assert_eq!(point, &ratvec(&[1, 0]));
                assert_eq!(image, &ratvec(&[4, 0]));
            }
            other => panic!("expected a Minty certificate, got {other:?}"),
        }
        // Interior sample projects to itself with zero residual.
        match &report.certificates[1] {
            Certificate::MintyPoint { point, image, .. } => {
                assert_eq!(point, &ratvec(&[0, 0]));
                assert!(image.is_zero());
            }
            other => panic!("expected a Minty certificate, got {other:?}"),
        }
    }

    #[test]
    fn minty_rejects_unbounded_or_empty() {
        let unbounded = VPolyhedron::new(vec![ratvec(&[0])], vec![ratvec(&[1])], 1).unwrap();
        assert!(matches!(
            minty_sample(&unbounded, &[], 0),
            Err(Error::UnboundedSet)
        ));
        let empty = VPolyhedron::<Rat>::polytope(vec![], 1).unwrap();
        assert!(matches!(minty_sample(&empty, &[], 0), Err(Error::EmptySet)));
    }

    #[test]
    fn lift_slice_of_abs_at_kink() {
        let slice = lift_ax(&abs(), &ratvec(&[0])).unwrap();
        assert_eq!(slice.vertices(), &[ratvec(&[1]), ratvec(&[-1])]);
        assert!(slice.rays().is_empty());
    }

    #[test]
    fn lift_slice_of_abs_off_kink_is_singleton() {
        let slice = lift_ax(&abs(), &ratvec(&[3])).unwrap();
        assert_eq!(slice.vertices(), &[ratvec(&[1])]);
    }

    #[test]
    fn lift_slice_of_constant_is_zero() {
        let f = MaxAffine::constant(rat(5, 2), 2);
        for x in [ratvec(&[0, 0]), ratvec(&[3, -4])] {
            let slice = lift_ax(&f, &x).unwrap();
            assert_eq!(slice.vertices(), &[ratvec(&[0, 0])]);
        }
    }

    #[test]
    fn level_lemma_member_case() {
        let report =
            check_vertical_normal_level(&abs(), &ratvec(&[1]), &rat(1, 1), &ratvec(&[1]))
                .unwrap();
        assert_eq!(report.conclusion, Some(true));
        assert!(matches!(
            report.certificates.last(),
            Some(Certificate::LevelEquality { member: true, .. })
        ));
    }

    #[test]
    fn level_lemma_above_graph_is_vacuous_with_separation() {
        let report =
            check_vertical_normal_level(&abs(), &ratvec(&[1]), &rat(2, 1), &ratvec(&[1]))
                .unwrap();
        assert_eq!(report.conclusion, Some(true));
        let (x, xstar, witness) = report
            .certificates
            .iter()
            .find_map(|c| match c {
                Certificate::Separation { x, xstar, witness } => Some((x, xstar, witness)),
                _ => None,
            })
            .expect("separation witness expected");
        assert!((witness - x).inner(xstar).unwrap() > rat(0, 1));
        assert!(abs().epigraph().member(witness).unwrap());
    }

    #[test]
    fn level_lemma_below_graph_is_vacuous() {
        let report =
            check_vertical_normal_level(&abs(), &ratvec(&[1]), &rat(1, 2), &ratvec(&[1]))
                .unwrap();
        assert_eq!(report.conclusion, Some(true));
        assert!(matches!(
            report.certificates.last(),
            Some(Certificate::LevelEquality { member: false, .. })
        ));
    }

    #[test]
    fn slice_equals_subdifferential_for_abs() {
        let xs = vec![ratvec(&[-2]), ratvec(&[0]), ratvec(&[2])];
        let report = check_epi_slice_equals_subdifferential(&abs(), &xs).unwrap();
        assert_eq!(report.conclusion, Some(true));
        assert_eq!(report.certificates.len(), 3);
    }

    #[test]
    fn slice_equals_subdifferential_for_linear() {
        let f = MaxAffine::new(vec![(ratvec(&[3, -1]), rat(1, 1))], 2).unwrap();
        let xs = vec![ratvec(&[0, 0]), ratvec(&[4, 5])];
        let report = check_epi_slice_equals_subdifferential(&f, &xs).unwrap();
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn lifted_operator_check_on_abs_samples() {
        // Normal-cone samples of epi |x| at the kink and the two slope-one
        // points, augmented with the zero functional.
        let pairs = vec![
            (ratvec(&[0, 0]), ratvec(&[1, -1])),
            (ratvec(&[0, 0]), ratvec(&[-1, -1])),
            (ratvec(&[1, 1]), ratvec(&[1, -1])),
            (ratvec(&[-1, 1]), ratvec(&[-1, -1])),
            (ratvec(&[0, 0]), ratvec(&[0, 0])),
            (ratvec(&[1, 1]), ratvec(&[0, 0])),
            (ratvec(&[-1, 1]), ratvec(&[0, 0])),
        ];
        let a = FiniteOperator::new(pairs, 2).unwrap();
        let report = check_lifted_operator_subdifferential(&a, 3).unwrap();
        assert!(report.hypotheses_hold(), "{:?}", report.hypotheses);
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn lifted_operator_check_rejects_nonmonotone() {
        let pairs = vec![
            (ratvec(&[0, 0]), ratvec(&[1, -1])),
            (ratvec(&[1, 0]), ratvec(&[-5, -1])),
        ];
        let a = FiniteOperator::new(pairs, 2).unwrap();
        let report = check_lifted_operator_subdifferential(&a, 3).unwrap();
        assert!(!report.hypotheses[0].holds);
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn lifted_operator_check_requires_lifted_dimension() {
        let a = op1(&[(0, 0)]);
        assert!(matches!(
            check_lifted_operator_subdifferential(&a, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn roundtrip_for_abs() {
        let xs = vec![ratvec(&[-1]), ratvec(&[0]), ratvec(&[1])];
        let report = check_subdifferential_roundtrip(&abs(), &xs).unwrap();
        assert!(report.hypotheses_hold());
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn roundtrip_for_constant_zero() {
        let f = MaxAffine::constant(rat(0, 1), 1);
        let xs = vec![ratvec(&[5]), ratvec(&[-5])];
        let report = check_subdifferential_roundtrip(&f, &xs).unwrap();
        assert_eq!(report.conclusion, Some(true));
    }

    #[test]
    fn rationalize_simple_observations() {
        // Prices and supplies in the plane; (1,0) supplied at price 0 too.
        let pairs = vec![
            (ratvec(&[0, 0]), ratvec(&[0, 0])),
            (ratvec(&[0, 0]), ratvec(&[1, 0])),
            (ratvec(&[1, 0]), ratvec(&[1, 0])),
        ];
        let t = FiniteOperator::new(pairs, 2).unwrap();
        let report = rationalize_supply(&t);
        assert_eq!(report.conclusion, Some(true));
        assert!(matches!(
            report.certificates.first(),
            Some(Certificate::ConstructedSet { vertices, .. }) if vertices.len() == 2
        ));
    }

    #[test]
    fn rationalize_rejects_law_of_supply_violation() {
        let t = op1(&[(0, 1), (1, 0)]);
        let report = rationalize_supply(&t);
        assert!(!report.hypotheses[0].holds);
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn profit_gap_engine_reports_the_exact_gap() {
        // When the hypotheses hold the conclusion is forced, so the gap
        // path is exercised against an adversarial production set: supply
        // (0,1) at price (1,0) is dominated by producing (1,0).
        let t = FiniteOperator::new(
            vec![(ratvec(&[1, 0]), ratvec(&[0, 1]))],
            2,
        )
        .unwrap();
        let y = VPolyhedron::polytope(vec![ratvec(&[0, 1]), ratvec(&[1, 0])], 2).unwrap();
        let (all, certs) = support_maximizer_certificates(&t, &y);
        assert!(!all);
        let gap = certs.iter().find_map(|c| match c {
            Certificate::SupportMaximizer {
                attained, support, ..
            } if attained != support => Some(support.clone() - attained.clone()),
            _ => None,
        });
        assert_eq!(gap, Some(rat(1, 1)));
    }

    #[test]
    fn epigraph_conditions_report() {
        let c = VPolyhedron::new(
            vec![ratvec(&[0, 0])],
            vec![ratvec(&[1, 1]), ratvec(&[-1, 1]), ratvec(&[0, 1])],
            2,
        )
        .unwrap();
        let report = check_epigraph_conditions(&c).unwrap();
        assert_eq!(report.conclusion, Some(true));
        assert_eq!(report.certificates.len(), 3);
    }

    #[test]
    fn theorem_checks_imply_their_engines() {
        // Consistency chain: the characterizations pass only if the
        // underlying inclusion checks pass on the same operator.
        let t = op1(&[(0, 0), (0, -1), (1, 0), (1, 2)]);
        let thm = check_normal_cone_characterization(&t, 5, 1);
        let prop = check_normal_cone_inclusion(&t);
        assert_eq!(thm.conclusion, Some(true));
        assert_eq!(prop.conclusion, Some(true));

        let t2 = op1(&[(-1, -1), (0, -1), (0, 0), (0, 1), (2, 1)]);
        let thm2 = check_sublinear_characterization(&t2, 5, 1);
        let cor = check_support_subdifferential_inclusion(&t2);
        assert_eq!(thm2.conclusion, Some(true));
        assert_eq!(cor.conclusion, Some(true));
    }
}
