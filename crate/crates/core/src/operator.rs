//! Finite monotone-operator graphs.
//!
//! A [`FiniteOperator`] is a finite list of `(x, x*)` pairs identified with
//! its graph: `(x, x*) in T` means `x* in T(x)`. Monotonicity is the
//! pairwise condition `<x1 - x2, x1* - x2*> >= 0`; cyclic monotonicity
//! requires every chain `x_0 -> x_1 -> ... -> x_k -> x_0` of graph points to
//! satisfy `sum_i <x_i - x_{i+1}, x_i*> >= 0`. Violations are returned as
//! certificates that re-verify by substitution.


use crate::convex::MaxAffine;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// A pair of graph points witnessing failure of monotonicity:
/// `gap = <x1 - x2, x1* - x2*> < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation<S> {
    pub index1: usize,
    pub index2: usize,
    pub pair1: (Vector<S>, Vector<S>),
    pub pair2: (Vector<S>, Vector<S>),
    pub gap: S,
}

impl<S: Scalar> MonotonicityViolation<S> {
    /// Recompute the gap from the stored pairs.
    pub fn recompute_gap(&self) -> S {
        let dx = &self.pair1.0 - &self.pair2.0;
        let dxs = &self.pair1.1 - &self.pair2.1;
        dx.inner_unchecked(&dxs)
    }
}

/// A chain of distinct pair indices `i_0, ..., i_k` whose cycle sum
/// `sum_t <x_{i_t} - x_{i_{t+1}}, x_{i_t}*>` (indices wrapping) is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleViolation<S> {
    pub indices: Vec<usize>,
    pub cycle_sum: S,
}

impl<S: Scalar> CycleViolation<S> {
    /// Recompute the cycle sum against the operator that produced it.
    pub fn recompute_sum(&self, operator: &FiniteOperator<S>) -> S {
        let k = self.indices.len();
        let mut sum = S::zero();
        for t in 0..k {
            let (xi, xsi) = &operator.pairs()[self.indices[t]];
            let (xj, _) = &operator.pairs()[self.indices[(t + 1) % k]];
            sum = sum + (xi - xj).inner_unchecked(xsi);
        }
        sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonotoneVerdict<S> {
    Monotone,
    Violation(MonotonicityViolation<S>),
}

impl<S> MonotoneVerdict<S> {
    pub fn holds(&self) -> bool {
        matches!(self, MonotoneVerdict::Monotone)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicVerdict<S> {
    CyclicallyMonotone,
    Violation(CycleViolation<S>),
}

impl<S> CyclicVerdict<S> {
    pub fn holds(&self) -> bool {
        matches!(self, CyclicVerdict::CyclicallyMonotone)
    }
}

/// Finite operator graph. Duplicate pairs are collapsed on construction;
/// duplicate `x` with different `x*` stay distinct graph nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOperator<S> {
    pairs: Vec<(Vector<S>, Vector<S>)>,
    dim: usize,
}

impl<S: Scalar> FiniteOperator<S> {
    pub fn new(pairs: Vec<(Vector<S>, Vector<S>)>, dim: usize) -> Result<Self, Error<S>> {
        let mut deduped: Vec<(Vector<S>, Vector<S>)> = Vec::with_capacity(pairs.len());
        for (x, xstar) in pairs {
            Error::check_dims(dim, x.dim())?;
            Error::check_dims(dim, xstar.dim())?;
            if !deduped.contains(&(x.clone(), xstar.clone())) {
                deduped.push((x, xstar));
            }
        }
        Ok(FiniteOperator {
            pairs: deduped,
            dim,
        })
    }

    pub fn pairs(&self) -> &[(Vector<S>, Vector<S>)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Both the primal and the dual space have this dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn primal_dim(&self) -> usize {
        self.dim
    }

    pub fn dual_dim(&self) -> usize {
        self.dim
    }

    /// Deduplicated list of points with nonempty value set, in first-seen
    /// order.
    pub fn domain(&self) -> Vec<Vector<S>> {
        let mut out: Vec<Vector<S>> = Vec::new();
        for (x, _) in &self.pairs {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }

    /// Deduplicated union of the value sets, in first-seen order.
    pub fn range(&self) -> Vec<Vector<S>> {
        let mut out: Vec<Vector<S>> = Vec::new();
        for (_, xstar) in &self.pairs {
            if !out.contains(xstar) {
                out.push(xstar.clone());
            }
        }
        out
    }

    /// `T(x)`, possibly empty.
    pub fn values_at(&self, x: &Vector<S>) -> Vec<Vector<S>> {
        self.pairs
            .iter()
            .filter(|(px, _)| px == x)
            .map(|(_, xstar)| xstar.clone())
            .collect()
    }

    /// The inverse graph: every pair swapped.
    pub fn invert(&self) -> Self {
        FiniteOperator {
            pairs: self
                .pairs
                .iter()
                .map(|(x, xstar)| (xstar.clone(), x.clone()))
                .collect(),
            dim: self.dim,
        }
    }

    /// Pairwise monotonicity. On failure, reports the worst violation (most
    /// negative gap); ties resolve to the lexicographically first index
    /// pair, which keeps test expectations stable.
    pub fn is_monotone(&self) -> MonotoneVerdict<S> {
        let mut worst: Option<MonotonicityViolation<S>> = None;
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                let (xi, xsi) = &self.pairs[i];
                let (xj, xsj) = &self.pairs[j];
                let gap = (xi - xj).inner_unchecked(&(xsi - xsj));
                let fails = if cfg!(feature = "fault-inject") {
                    gap <= S::zero()
                } else {
                    gap < S::zero()
                };
                if fails && worst.as_ref().is_none_or(|w| gap < w.gap) {
                    worst = Some(MonotonicityViolation {
                        index1: i,
                        index2: j,
                        pair1: self.pairs[i].clone(),
                        pair2: self.pairs[j].clone(),
                        gap,
                    });
                }
            }
        }
        match worst {
            None => MonotoneVerdict::Monotone,
            Some(v) => MonotoneVerdict::Violation(v),
        }
    }

    /// Edge weight `w(i -> j) = <x_j - x_i, x_i*>` of the chain digraph.
    fn chain_weight(&self, i: usize, j: usize) -> S {
        let (xi, xsi) = &self.pairs[i];
        let (xj, _) = &self.pairs[j];
        (xj - xi).inner_unchecked(xsi)
    }

    /// Cyclic monotonicity via negative-cycle detection.
    ///
    /// The cycle condition fails exactly when the complete digraph on the
    /// pairs with weights `w(i -> j) = <x_j - x_i, x_i*>` has a positive
    /// cycle, i.e. the negated weights have a negative cycle. Bellman-Ford
    /// relaxation from a virtual source finds one; the certificate is
    /// extracted by predecessor walking and rotated so the smallest index
    /// leads.
    pub fn is_cyclically_monotone(&self) -> CyclicVerdict<S> {
        let n = self.pairs.len();
        if n < 2 {
            return CyclicVerdict::CyclicallyMonotone;
        }

        // dist[] starts all-zero, simulating a super-source; weights are
        // the negated chain weights.
        let mut dist: Vec<S> = vec![S::zero(); n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut relaxed_node = None;
        for round in 0..n {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let cand = dist[i].clone() - self.chain_weight(i, j);
                    if cand < dist[j] {
                        dist[j] = cand;
                        pred[j] = Some(i);
                        changed = true;
                        if round == n - 1 {
                            relaxed_node = Some(j);
                        }
                    }
                }
            }
            if !changed {
                return CyclicVerdict::CyclicallyMonotone;
            }
        }
        let Some(start) = relaxed_node else {
            return CyclicVerdict::CyclicallyMonotone;
        };

        // Walk predecessors n steps to land inside the cycle, then collect.
        let mut node = start;
        for _ in 0..n {
            node = pred[node].expect("relaxed node has a predecessor");
        }
        let mut cycle = vec![node];
        let mut cur = pred[node].expect("cycle node has a predecessor");
        while cur != node {
            cycle.push(cur);
            cur = pred[cur].expect("cycle node has a predecessor");
        }
        // Predecessor order is reverse edge order; flip to follow the
        // chain, then rotate the smallest index to the front.
        cycle.reverse();
        let lead = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &idx)| idx)
            .map(|(pos, _)| pos)
            .expect("nonempty cycle");
        cycle.rotate_left(lead);

        let violation = CycleViolation {
            cycle_sum: S::zero(),
            indices: cycle,
        };
        let cycle_sum = violation.recompute_sum(self);
        debug_assert!(cycle_sum < S::zero(), "extracted cycle must violate");
        CyclicVerdict::Violation(CycleViolation {
            cycle_sum,
            ..violation
        })
    }

    /// Max-affine potential of a cyclically monotone graph.
    ///
    /// `phi_i` is the longest chain weight from the base pair to pair `i`
    /// over the weights `w(i -> j) = <x_j - x_i, x_i*>` (finite because no
    /// cycle has positive weight); the result is
    /// `f(x) = max_i (phi_i + <x - x_i, x_i*>)`, with `phi_base = 0`. It
    /// satisfies `T subset of del f` and `f(x_base) = 0`. The base choice
    /// only shifts `f` by a constant.
    pub fn rockafellar_potential(&self, base: usize) -> Result<MaxAffine<S>, Error<S>> {
        if self.pairs.is_empty() {
            return Err(Error::EmptyOperator);
        }
        assert!(base < self.pairs.len(), "base pair index out of range");
        if let CyclicVerdict::Violation(v) = self.is_cyclically_monotone() {
            return Err(Error::NotCyclicallyMonotone(v));
        }

        let n = self.pairs.len();
        let mut phi: Vec<Option<S>> = vec![None; n];
        phi[base] = Some(S::zero());
        for _ in 0..n {
            let mut changed = false;
            for i in 0..n {
                let Some(phi_i) = phi[i].clone() else {
                    continue;
                };
                for j in (0..n).filter(|&j| j != i) {
                    let cand = phi_i.clone() + self.chain_weight(i, j);
                    if phi[j].as_ref().is_none_or(|cur| cand > *cur) {
                        phi[j] = Some(cand);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let pieces = self
            .pairs
            .iter()
            .zip(phi.iter())
            .map(|((x, xstar), phi_i)| {
                let phi_i = phi_i.clone().expect("complete digraph reaches every node");
                let b = phi_i - x.inner_unchecked(xstar);
                (xstar.clone(), b)
            })
            .collect();
        MaxAffine::new(pieces, self.dim)
    }
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

    /// Quarter-turn samples: monotone but not cyclically monotone.
    fn rotation() -> FiniteOperator<Rat> {
        let rot = |x: i64, y: i64| (ratvec(&[x, y]), ratvec(&[-y, x]));
        FiniteOperator::new(vec![rot(1, 0), rot(0, 1), rot(-1, 0)], 2).unwrap()
    }

    #[test]
    fn domain_range_values() {
        let t = FiniteOperator::new(
            vec![
                (ratvec(&[0]), ratvec(&[0])),
                (ratvec(&[0]), ratvec(&[1])),
            ],
            1,
        )
        .unwrap();
        assert_eq!(t.domain(), vec![ratvec(&[0])]);
        assert_eq!(t.range(), vec![ratvec(&[0]), ratvec(&[1])]);
        assert_eq!(
            t.values_at(&ratvec(&[0])),
            vec![ratvec(&[0]), ratvec(&[1])]
        );
        assert!(t.values_at(&ratvec(&[5])).is_empty());
    }

    #[test]
    fn empty_operator_has_empty_views() {
        let t = FiniteOperator::<Rat>::new(vec![], 1).unwrap();
        assert!(t.domain().is_empty());
        assert!(t.range().is_empty());
    }

    #[test]
    fn duplicates_collapse_on_load() {
        let t = op1(&[(1, 2), (1, 2), (1, 2)]);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn invert_swaps_and_is_involutive() {
        let t = op1(&[(1, 2)]);
        let inv = t.invert();
        assert_eq!(inv.pairs()[0], (ratvec(&[2]), ratvec(&[1])));
        assert_eq!(inv.invert(), t);
        assert!(FiniteOperator::<Rat>::new(vec![], 1)
            .unwrap()
            .invert()
            .is_empty());
    }

    #[test]
    fn identity_samples_are_monotone() {
        let t = op1(&[(0, 0), (1, 1), (2, 2)]);
        assert!(t.is_monotone().holds());
    }

    #[test]
    fn decreasing_graph_reports_worst_gap() {
        let t = op1(&[(0, 0), (1, -1)]);
        match t.is_monotone() {
            MonotoneVerdict::Violation(v) => {
                assert_eq!(v.gap, rat(-1, 1));
                assert_eq!((v.index1, v.index2), (0, 1));
                assert_eq!(v.recompute_gap(), v.gap);
            }
            MonotoneVerdict::Monotone => panic!("expected a violation"),
        }
    }

    #[test]
    fn rotation_is_monotone() {
        // Oracle: <d, Rd> = 0 for every d, so every pairwise gap is 0.
        let t = rotation();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let (xi, xsi) = &t.pairs()[i];
                let (xj, xsj) = &t.pairs()[j];
                assert_eq!(
                    (xi - xj).inner(&(xsi - xsj)).unwrap(),
                    rat(0, 1)
                );
            }
        }
        assert!(t.is_monotone().holds());
    }

    /// Exhaustive oracle: minimum cycle sum over all simple cycles.
    fn min_cycle_sum(t: &FiniteOperator<Rat>) -> Option<Rat> {
        fn visit(
            t: &FiniteOperator<Rat>,
            start: usize,
            path: &mut Vec<usize>,
            best: &mut Option<Rat>,
        ) {
            let last = *path.last().unwrap();
            for next in start..t.len() {
                if path.contains(&next) {
                    continue;
                }
                // Close the cycle path -> next -> path[0].
                let mut sum = rat(0, 1);
                for w in path.windows(2) {
                    sum += eq1_term(t, w[0], w[1]);
                }
                sum += eq1_term(t, last, next) + eq1_term(t, next, path[0]);
                if best.as_ref().is_none_or(|b| sum < *b) {
                    *best = Some(sum.clone());
                }
                path.push(next);
                visit(t, start, path, best);
                path.pop();
            }
        }
        fn eq1_term(t: &FiniteOperator<Rat>, i: usize, j: usize) -> Rat {
            let (xi, xsi) = &t.pairs()[i];
            let (xj, _) = &t.pairs()[j];
            (xi - xj).inner(xsi).unwrap()
        }
        let mut best = None;
        for s in 0..t.len() {
            let mut path = vec![s];
            visit(t, s + 1, &mut path, &mut best);
        }
        best
    }

    #[test]
    fn rotation_fails_cyclic_monotonicity_with_sum_minus_two() {
        let t = rotation();
        // Oracle over all simple cycles of length <= 3.
        assert_eq!(min_cycle_sum(&t), Some(rat(-2, 1)));
        match t.is_cyclically_monotone() {
            CyclicVerdict::Violation(v) => {
                assert_eq!(v.cycle_sum, rat(-2, 1));
                assert_eq!(v.indices, vec![0, 1, 2]);
                assert_eq!(v.recompute_sum(&t), rat(-2, 1));
            }
            CyclicVerdict::CyclicallyMonotone => panic!("expected a cycle violation"),
        }
    }

    #[test]
    fn identity_samples_are_cyclically_monotone() {
        let t = op1(&[(0, 0), (1, 1), (2, 2)]);
        assert!(min_cycle_sum(&t).unwrap() >= rat(0, 1));
        assert!(t.is_cyclically_monotone().holds());
    }

    #[test]
    fn single_pair_is_cyclically_monotone() {
        assert!(op1(&[(3, -7)]).is_cyclically_monotone().holds());
    }

    #[test]
    fn potential_of_single_pair_at_origin_is_zero() {
        let t = op1(&[(0, 0)]);
        let f = t.rockafellar_potential(0).unwrap();
        assert_eq!(f.pieces().len(), 1);
        assert_eq!(f.pieces()[0], (ratvec(&[0]), rat(0, 1)));
    }

    #[test]
    fn potential_of_two_point_identity_sample() {
        // Brute force over all chains of length <= 2 gives
        // phi = (0, 0), hence pieces (0, 0) and (1, -1): f = max(0, x - 1).
        let t = op1(&[(0, 0), (1, 1)]);
        let f = t.rockafellar_potential(0).unwrap();
        assert_eq!(
            f.pieces(),
            &[(ratvec(&[0]), rat(0, 1)), (ratvec(&[1]), rat(-1, 1))]
        );
        assert_eq!(f.evaluate(&ratvec(&[0])).unwrap(), rat(0, 1));
        assert_eq!(f.evaluate(&ratvec(&[2])).unwrap(), rat(1, 1));
    }

    #[test]
    fn potential_vanishes_at_base() {
        let t = op1(&[(-1, -1), (0, 0), (2, 1)]);
        for base in 0..t.len() {
            let f = t.rockafellar_potential(base).unwrap();
            let x_base = &t.pairs()[base].0;
            assert_eq!(f.evaluate(x_base).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn potential_requires_cyclic_monotonicity() {
        let t = rotation();
        match t.rockafellar_potential(0) {
            Err(Error::NotCyclicallyMonotone(v)) => assert_eq!(v.cycle_sum, rat(-2, 1)),
            other => panic!("expected NotCyclicallyMonotone, got {other:?}"),
        }
        let empty = FiniteOperator::<Rat>::new(vec![], 1).unwrap();
        assert!(matches!(
            empty.rockafellar_potential(0),
            Err(Error::EmptyOperator)
        ));
    }

    #[test]
    fn invert_preserves_monotonicity_verdict() {
        let mono = op1(&[(0, 0), (1, 2), (3, 5)]);
        assert!(mono.invert().is_monotone().holds());
        let non = op1(&[(0, 0), (1, -1)]);
        assert!(!non.invert().is_monotone().holds());
    }
}
