//! Normal cones, support faces, and epigraph machinery.
//!
//! The normal cone to `C` at `x` is `N_C(x) = {x* : <y - x, x*> <= 0 for
//! all y in C}`, empty off `C`. On generator sets membership is a
//! definitional finite check over vertices and rays; on half-space sets the
//! cone is generated by the tight row normals, and membership can also be
//! settled by a single support LP which doubles as a witness factory.


use crate::error::Error;
use crate::lp::{lp_max, LpOutcome};
use crate::poly::{HPolyhedron, VPolyhedron};
use crate::scalar::{Extended, Scalar};
use crate::vector::Vector;

/// Membership `x* in N_C(x)` for a generator set `C`.
///
/// False when `x` is not in `C`; otherwise true exactly when
/// `<v - x, x*> <= 0` for every vertex and `<r, x*> <= 0` for every ray.
pub fn normal_cone_member<S: Scalar>(
    c: &VPolyhedron<S>,
    x: &Vector<S>,
    xstar: &Vector<S>,
) -> Result<bool, Error<S>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    Error::check_dims(c.dim(), x.dim())?;
    Error::check_dims(c.dim(), xstar.dim())?;
    if !c.member(x)? {
        return Ok(false);
    }
    Ok(c.vertices()
        .iter()
        .all(|v| (v - x).inner_unchecked(xstar) <= S::zero())
        && c.rays()
            .iter()
            .all(|r| r.inner_unchecked(xstar) <= S::zero()))
}

/// Generators of `N_C(x)` for a half-space set: the normals of the rows
/// tight at `x`. Errors when `x` is outside `C`.
pub fn normal_cone_generators<S: Scalar>(
    c: &HPolyhedron<S>,
    x: &Vector<S>,
) -> Result<Vec<Vector<S>>, Error<S>> {
    if !c.member(x)? {
        return Err(Error::PointNotInSet);
    }
    Ok(c.tight_rows(x)?
        .into_iter()
        .map(|j| c.rows()[j].0.clone())
        .collect())
}

/// Outcome of the LP-backed normal-cone membership test on a half-space
/// set. A negative verdict carries a point of `C` with
/// `<witness - x, x*> > 0`, re-checkable by substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalVerdict<S> {
    Member,
    NotInSet,
    Separated { witness: Vector<S> },
}

impl<S> NormalVerdict<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, NormalVerdict::Member)
    }
}

/// Membership `x* in N_C(x)` for a half-space set, via one support LP:
/// the condition `<y - x, x*> <= 0` for all `y in C` says exactly that
/// `sup_{y in C} <y, x*>` is attained at `x`.
pub fn normal_cone_member_h<S: Scalar>(
    c: &HPolyhedron<S>,
    x: &Vector<S>,
    xstar: &Vector<S>,
) -> Result<NormalVerdict<S>, Error<S>> {
    Error::check_dims(c.dim(), x.dim())?;
    Error::check_dims(c.dim(), xstar.dim())?;
    if !c.member(x)? {
        return Ok(NormalVerdict::NotInSet);
    }
    let at_x = x.inner_unchecked(xstar);
    match lp_max(xstar, c)? {
        LpOutcome::Optimal { value, point } => {
            if value <= at_x {
                Ok(NormalVerdict::Member)
            } else {
                Ok(NormalVerdict::Separated { witness: point })
            }
        }
        LpOutcome::Unbounded { ray } => {
            // x + ray stays in C and strictly increases <., x*>.
            Ok(NormalVerdict::Separated { witness: x + &ray })
        }
        LpOutcome::Infeasible => unreachable!("C contains x, so it is nonempty"),
    }
}

/// The face of `C` supported by `x*`: the maximizers of `<., x*>` over `C`,
/// i.e. `conv{v : <v, x*> = sigma_C(x*)} + cone{r : <r, x*> = 0}`. This is
/// also the subdifferential of the support function of `C` at `x*`. Errors
/// when the support value is `+inf`.
pub fn support_face<S: Scalar>(
    c: &VPolyhedron<S>,
    xstar: &Vector<S>,
) -> Result<VPolyhedron<S>, Error<S>> {
    let sigma = match c.support_value(xstar)? {
        Extended::Finite(v) => v,
        Extended::PosInf => return Err(Error::SupportUnbounded),
    };
    let vertices = c
        .vertices()
        .iter()
        .filter(|v| v.inner_unchecked(xstar) == sigma)
        .cloned()
        .collect();
    let rays = c
        .rays()
        .iter()
        .filter(|r| r.inner_unchecked(xstar).is_zero())
        .cloned()
        .collect();
    VPolyhedron::new(vertices, rays, c.dim())
}

/// Report on the three epigraph conditions for a generator set in `X x R`:
/// (i) the set is nonempty (convexity and closedness are automatic for
/// this representation), (ii) the barrier cone meets `X* x {-1}`, and
/// (iii) the upward direction `(0, 1)` lies in the recession cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiConditionsReport<S> {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    /// A vertex of the set, when nonempty.
    pub witness_i: Option<Vector<S>>,
    /// A dual point `x*` with `(x*, -1)` in the barrier cone, when one
    /// exists.
    pub witness_ii: Option<Vector<S>>,
}

impl<S> EpiConditionsReport<S> {
    pub fn all_hold(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }
}

/// Decide the epigraph conditions for `c` in `X x R`.
///
/// Condition (ii) asks for `x*` with `(x*, -1)` of finite support over `c`;
/// with generators this is the feasibility of
/// `{x* : <r_x, x*> <= r_l for every ray (r_x, r_l)}`, settled by LP.
/// Condition (iii) is recession-cone membership of `(0, 1)`.
pub fn epigraph_conditions<S: Scalar>(
    c: &VPolyhedron<S>,
) -> Result<EpiConditionsReport<S>, Error<S>> {
    if c.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: c.dim(),
        });
    }
    let n = c.dim() - 1;

    let cond_i = !c.is_empty();
    let witness_i = c.vertices().first().cloned();

    let rows: Vec<(Vector<S>, S)> = c
        .rays()
        .iter()
        .map(|r| {
            let (rx, rl) = r.split_last();
            (rx, rl)
        })
        .collect();
    let slice = HPolyhedron::new(rows, n)?;
    let witness_ii = crate::lp::lp_feasible_point(&slice)?;
    let cond_ii = witness_ii.is_some();

    let upward = Vector::zero(n).with_appended(S::one());
    let cond_iii = if cond_i {
        c.recession_member(&upward)?
    } else {
        false
    };

    Ok(EpiConditionsReport {
        cond_i,
        cond_ii,
        cond_iii,
        witness_i,
        witness_ii,
    })
}

/// `f(x) = inf{l : (x, l) in C}` for a generator set satisfying the
/// epigraph conditions; `+inf` when the vertical line through `x` misses
/// `C`. Conditions (i) and (ii) preclude `-inf`, so a finite infimum is
/// attained (the set is closed).
pub fn epi_to_value<S: Scalar>(
    c: &VPolyhedron<S>,
    x: &Vector<S>,
) -> Result<Extended<S>, Error<S>> {
    let report = epigraph_conditions(c)?;
    if !report.all_hold() {
        return Err(Error::ConditionsNotMet {
            cond_i: report.cond_i,
            cond_ii: report.cond_ii,
            cond_iii: report.cond_iii,
        });
    }
    Error::check_dims(c.dim() - 1, x.dim())?;

    // Minimize l over combinations sum mu_i v_i + sum nu_j r_j = (x, l);
    // variables are the multipliers plus l itself.
    let nv = c.vertices().len();
    let nr = c.rays().len();
    let k = nv + nr + 1; // multipliers, then l
    let n = x.dim();
    let mut rows: Vec<(Vector<S>, S)> = Vec::new();

    // Spatial coordinates: sum lambda_g g_c = x_c.
    for coord in 0..n {
        let mut coeffs: Vec<S> = c
            .vertices()
            .iter()
            .chain(c.rays().iter())
            .map(|g| g[coord].clone())
            .collect();
        coeffs.push(S::zero());
        let row = Vector::new(coeffs);
        rows.push((row.clone(), x[coord].clone()));
        rows.push((-&row, -x[coord].clone()));
    }
    // Last coordinate: sum lambda_g g_l - l = 0.
    let mut coeffs: Vec<S> = c
        .vertices()
        .iter()
        .chain(c.rays().iter())
        .map(|g| g[n].clone())
        .collect();
    coeffs.push(-S::one());
    let row = Vector::new(coeffs);
    rows.push((row.clone(), S::zero()));
    rows.push((-&row, S::zero()));
    // Convex combination over the vertices.
    let mut ones = vec![S::zero(); k];
    for slot in ones.iter_mut().take(nv) {
        *slot = S::one();
    }
    let ones = Vector::new(ones);
    rows.push((ones.clone(), S::one()));
    rows.push((-&ones, -S::one()));
    // Nonnegative multipliers (l itself stays free).
    for i in 0..nv + nr {
        rows.push((-&Vector::unit(k, i), S::zero()));
    }

    let feasible = HPolyhedron::new(rows, k)?;
    let mut objective = Vector::zero(k).into_coords();
    objective[k - 1] = -S::one(); // maximize -l = minimize l
    match lp_max(&Vector::new(objective), &feasible)? {
        LpOutcome::Optimal { value, .. } => Ok(Extended::Finite(-value)),
        LpOutcome::Infeasible => Ok(Extended::PosInf),
        LpOutcome::Unbounded { .. } => {
            unreachable!("conditions i and ii bound the epigraph values below")
        }
    }
}

/// Discrepancy found by [`verify_conjugate_duality`]; empty list expected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyDiscrepancy<S> {
    pub xstar: Vector<S>,
    pub point: Vector<S>,
    pub direction: &'static str,
}

/// Report of the sampled inverse relationship between the subdifferential
/// of the support function and the normal cone operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport<S> {
    pub checked_forward: usize,
    pub checked_backward: usize,
    pub discrepancies: Vec<ConjugacyDiscrepancy<S>>,
}

impl<S> ConjugacyReport<S> {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Sampled check that subdifferentials of mutually conjugate functions are
/// inverse to each other, instantiated for the indicator/support pair of a
/// bounded `C`: every vertex `z` of the face of `C` supported by `x*` must
/// satisfy `x* in N_C(z)` (forward), and every vertex of `C` whose normal
/// cone contains a sampled `x*` must maximize `<., x*>` (backward).
pub fn verify_conjugate_duality<S: Scalar>(
    c: &VPolyhedron<S>,
    sample_xstars: &[Vector<S>],
) -> Result<ConjugacyReport<S>, Error<S>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut report = ConjugacyReport {
        checked_forward: 0,
        checked_backward: 0,
        discrepancies: Vec::new(),
    };
    for xstar in sample_xstars {
        let sigma = match c.support_value(xstar)? {
            Extended::Finite(v) => v,
            Extended::PosInf => continue,
        };
        let face = support_face(c, xstar)?;
        for z in face.vertices() {
            report.checked_forward += 1;
            if !normal_cone_member(c, z, xstar)? {
                report.discrepancies.push(ConjugacyDiscrepancy {
                    xstar: xstar.clone(),
                    point: z.clone(),
                    direction: "face vertex not in normal cone",
                });
            }
        }
        for v in c.vertices() {
            if normal_cone_member(c, v, xstar)? {
                report.checked_backward += 1;
                if v.inner_unchecked(xstar) != sigma {
                    report.discrepancies.push(ConjugacyDiscrepancy {
                        xstar: xstar.clone(),
                        point: v.clone(),
                        direction: "normal pair fails to maximize",
                    });
                }
            }
        }
    }
    Ok(report)
}
