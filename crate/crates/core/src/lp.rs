//! Exact simplex over the scalar field.
//!
//! Maximizes a linear functional over an [`HPolyhedron`] with free
//! variables. Two-phase dense tableau method; the pivot rule is Bland's
//! (smallest eligible index), which is anti-cycling and makes every verdict
//! and witness deterministic. All arithmetic is exact, so the returned
//! optimum, optimizer and rays re-verify by substitution.


use crate::error::Error;
use crate::poly::HPolyhedron;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Outcome of [`lp_max`]. Witnesses satisfy their reported role exactly:
/// the optimal point is feasible and attains `value`; the unbounded ray `r`
/// satisfies every row homogeneously (`<a_j, r> <= 0`) and improves the
/// objective (`<c, r> > 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<S> {
    Optimal { value: S, point: Vector<S> },
    Unbounded { ray: Vector<S> },
    Infeasible,
}

/// Maximize `<objective, x>` over `feasible`.
pub fn lp_max<S: Scalar>(
    objective: &Vector<S>,
    feasible: &HPolyhedron<S>,
) -> Result<LpOutcome<S>, Error<S>> {
    Error::check_dims(feasible.dim(), objective.dim())?;
    let n = objective.dim();
    let mut tab = Tableau::build(feasible, n);

    // Phase one: maximize minus the sum of artificials. The optimum is zero
    // exactly when the original rows are satisfiable.
    if tab.num_artificial > 0 {
        let mut costs = vec![S::zero(); tab.ncols];
        for slot in costs.iter_mut().skip(tab.artificial_start()) {
            *slot = -S::one();
        }
        match tab.run(&costs, tab.ncols) {
            Phase::Optimal => {}
            Phase::Unbounded { .. } => unreachable!("phase-one objective is bounded above by 0"),
        }
        if tab.objective_value(&costs) < S::zero() {
            return Ok(LpOutcome::Infeasible);
        }
        tab.drive_out_artificials();
    }

    // Phase two: the real objective over x = u - v; artificials are banned.
    let mut costs = vec![S::zero(); tab.ncols];
    for j in 0..n {
        costs[j] = objective[j].clone();
        costs[n + j] = -objective[j].clone();
    }
    let banned_from = tab.artificial_start();
    match tab.run(&costs, banned_from) {
        Phase::Optimal => {
            let point = tab.structural_point(n);
            let value = objective.inner_unchecked(&point);
            Ok(LpOutcome::Optimal { value, point })
        }
        Phase::Unbounded { entering } => {
            let ray = tab.structural_ray(n, entering);
            debug_assert!(
                objective.inner_unchecked(&ray) > S::zero(),
                "unbounded ray must improve the objective"
            );
            debug_assert!(
                feasible
                    .rows()
                    .iter()
                    .all(|(a, _)| a.inner_unchecked(&ray) <= S::zero()),
                "unbounded ray must be homogeneously feasible"
            );
            Ok(LpOutcome::Unbounded { ray })
        }
    }
}

/// Maximize `0` over `feasible`: pure feasibility. Returns a feasible point
/// or `None`.
pub fn lp_feasible_point<S: Scalar>(
    feasible: &HPolyhedron<S>,
) -> Result<Option<Vector<S>>, Error<S>> {
    match lp_max(&Vector::zero(feasible.dim()), feasible)? {
        LpOutcome::Optimal { point, .. } => Ok(Some(point)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}

enum Phase {
    Optimal,
    Unbounded { entering: usize },
}

/// Dense tableau. Column layout: `u_0..u_{n-1} | v_0..v_{n-1} | slacks |
/// artificials`, with `x = u - v`. Rows whose right-hand side was negative
/// are stored negated with slack coefficient -1 and an artificial basic
/// variable, the textbook phase-one setup.
struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
    ncols: usize,
    num_artificial: usize,
}

impl<S: Scalar> Tableau<S> {
    fn build(feasible: &HPolyhedron<S>, n: usize) -> Self {
        let m = feasible.rows().len();
        let negated: Vec<bool> = feasible
            .rows()
            .iter()
            .map(|(_, b)| *b < S::zero())
            .collect();
        let num_artificial = negated.iter().filter(|&&x| x).count();
        let ncols = 2 * n + m + num_artificial;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_artificial = 2 * n + m;

        for (i, (normal, offset)) in feasible.rows().iter().enumerate() {
            let mut row = vec![S::zero(); ncols];
            let flip = negated[i];
            for j in 0..n {
                let a = if flip {
                    -normal[j].clone()
                } else {
                    normal[j].clone()
                };
                row[j] = a.clone();
                row[n + j] = -a;
            }
            let slack = 2 * n + i;
            if flip {
                row[slack] = -S::one();
                row[next_artificial] = S::one();
                basis.push(next_artificial);
                next_artificial += 1;
                rhs.push(-offset.clone());
            } else {
                row[slack] = S::one();
                basis.push(slack);
                rhs.push(offset.clone());
            }
            rows.push(row);
        }

        Tableau {
            rows,
            rhs,
            basis,
            ncols,
            num_artificial,
        }
    }

    fn artificial_start(&self) -> usize {
        self.ncols - self.num_artificial
    }

    fn objective_value(&self, costs: &[S]) -> S {
        self.basis
            .iter()
            .zip(self.rhs.iter())
            .fold(S::zero(), |acc, (&b, v)| acc + costs[b].clone() * v.clone())
    }

    fn reduced_cost(&self, costs: &[S], j: usize) -> S {
        let mut z = costs[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() && !self.rows[i][j].is_zero() {
                z = z - costs[b].clone() * self.rows[i][j].clone();
            }
        }
        z
    }

    /// Run simplex iterations for the given costs. Columns with index at or
    /// above `banned_from` never enter.
    fn run(&mut self, costs: &[S], banned_from: usize) -> Phase {
        loop {
            // Bland: the smallest nonbasic column with positive reduced cost.
            let entering = (0..banned_from.min(self.ncols)).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(costs, j) > S::zero()
            });
            let Some(e) = entering else {
                return Phase::Optimal;
            };

            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e] > S::zero() {
                    let ratio = self.rhs[i].clone() / self.rows[i][e].clone();
                    let better = match &leave {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Phase::Unbounded { entering: e },
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let pivot = self.rows[r][e].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / pivot;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let factor = self.rows[i][e].clone();
            for j in 0..self.ncols {
                if !self.rows[r][j].is_zero() {
                    let delta = factor.clone() * self.rows[r][j].clone();
                    self.rows[i][j] = self.rows[i][j].clone() - delta;
                }
            }
            let delta = factor * self.rhs[r].clone();
            self.rhs[i] = self.rhs[i].clone() - delta;
        }
        self.basis[r] = e;
    }

    /// After a zero-value phase one, pivot remaining basic artificials out;
    /// rows that cannot be pivoted are redundant and get dropped.
    fn drive_out_artificials(&mut self) {
        let art_start = self.artificial_start();
        let mut drop_rows = Vec::new();
        for i in 0..self.rows.len() {
            if self.basis[i] < art_start {
                continue;
            }
            debug_assert!(self.rhs[i].is_zero(), "basic artificial at nonzero level");
            match (0..art_start)
                .find(|&j| !self.basis.contains(&j) && !self.rows[i][j].is_zero())
            {
                Some(j) => self.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            self.rows.remove(i);
            self.rhs.remove(i);
            self.basis.remove(i);
        }
    }

    /// Current basic solution projected back to `x = u - v`.
    fn structural_point(&self, n: usize) -> Vector<S> {
        let mut coords = vec![S::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                coords[b] = coords[b].clone() + self.rhs[i].clone();
            } else if b < 2 * n {
                coords[b - n] = coords[b - n].clone() - self.rhs[i].clone();
            }
        }
        Vector::new(coords)
    }

    /// Improving ray when column `e` can grow forever: the entering column
    /// moves by one, each basic variable by minus its tableau coefficient.
    fn structural_ray(&self, n: usize, e: usize) -> Vector<S> {
        let mut full = vec![S::zero(); self.ncols];
        full[e] = S::one();
        for (i, &b) in self.basis.iter().enumerate() {
            full[b] = -self.rows[i][e].clone();
        }
        let mut coords = vec![S::zero(); n];
        for j in 0..n {
            coords[j] = full[j].clone() - full[n + j].clone();
        }
        Vector::new(coords)
    }
}
