//! The randomized property suite behind `selftest`.
//!
//! Each suite draws seeded instances, runs the corresponding check, and
//! demands an exact pass; any failure is greedily shrunk (dropping operator
//! pairs or function pieces while the failure persists) and embedded in the
//! report as JSON. All randomness derives from the configured seed, so two
//! runs with equal configuration produce byte-identical reports.

use serde::{Deserialize, Serialize};

use crate::checks::{
    check_epi_slice_equals_subdifferential, check_lifted_operator_subdifferential,
    check_normal_cone_characterization, check_sublinear_characterization,
    check_vertical_normal_level, CheckReport,
};
use crate::cones::{epigraph_conditions, verify_conjugate_duality};
use crate::convex::{sublinear_from_polytope, MaxAffine};
use crate::json::{to_json_string, FunctionFile, OperatorFile, SetFile};
use crate::operator::{CyclicVerdict, FiniteOperator};
use crate::poly::VPolyhedron;
use crate::sample::InstanceSampler;
use crate::scalar::Extended;
use crate::vector::Vector;
use crate::{rat, Rat};

#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Instances per suite; zero yields a vacuous pass.
    pub instances: usize,
    /// Sample points per instance (function evaluations, dual directions).
    pub samples: usize,
    /// Minty samples per instance, and level-lemma triples per function.
    pub minty_samples: usize,
    /// Radius of the integer evaluation grid for subgradient checks.
    pub grid_radius: i64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 42,
            instances: 100,
            samples: 20,
            minty_samples: 50,
            grid_radius: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub vacuous: bool,
    pub all_passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureRecord {
    pub case: usize,
    pub detail: String,
    pub instance: serde_json::Value,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome {
            name: name.to_owned(),
            cases: 0,
            passes: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, passed: bool, failure: impl FnOnce() -> FailureRecord) {
        self.cases += 1;
        if passed {
            self.passes += 1;
        } else {
            self.failures.push(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Drop operator pairs one at a time while the failure persists.
pub fn shrink_operator(
    mut t: FiniteOperator<Rat>,
    still_fails: impl Fn(&FiniteOperator<Rat>) -> bool,
) -> FiniteOperator<Rat> {
    'outer: loop {
        for i in 0..t.len() {
            let mut pairs = t.pairs().to_vec();
            pairs.remove(i);
            let candidate =
                FiniteOperator::new(pairs, t.dim()).expect("removal preserves dimensions");
            if still_fails(&candidate) {
                t = candidate;
                continue 'outer;
            }
        }
        return t;
    }
}

/// Drop function pieces one at a time while the failure persists.
pub fn shrink_function(
    mut f: MaxAffine<Rat>,
    still_fails: impl Fn(&MaxAffine<Rat>) -> bool,
) -> MaxAffine<Rat> {
    'outer: loop {
        if f.pieces().len() <= 1 {
            return f;
        }
        for i in 0..f.pieces().len() {
            let mut pieces = f.pieces().to_vec();
            pieces.remove(i);
            let candidate = MaxAffine::new(pieces, f.dim()).expect("still nonempty");
            if still_fails(&candidate) {
                f = candidate;
                continue 'outer;
            }
        }
        return f;
    }
}

fn operator_json(t: &FiniteOperator<Rat>) -> serde_json::Value {
    serde_json::to_value(OperatorFile::from_operator(t)).expect("operator serializes")
}

fn function_json(f: &MaxAffine<Rat>) -> serde_json::Value {
    serde_json::to_value(FunctionFile::from_function(f)).expect("function serializes")
}

fn set_json(c: &VPolyhedron<Rat>) -> serde_json::Value {
    serde_json::to_value(SetFile::from_vpolyhedron(c)).expect("set serializes")
}

fn conclusion_true(report: &CheckReport<Rat>) -> bool {
    report.conclusion == Some(true)
}

/// Run the full randomized property suite.
pub fn run(config: &SelftestConfig) -> SelftestReport {
    let mut suites = Vec::new();
    if config.instances == 0 {
        return SelftestReport {
            seed: config.seed,
            instances: 0,
            vacuous: true,
            all_passed: true,
            suites,
        };
    }

    // The function pool is shared by the suites that quantify over "the
    // same" functions.
    let mut fn_sampler = InstanceSampler::new(config.seed);
    let functions: Vec<MaxAffine<Rat>> = (0..config.instances)
        .map(|_| {
            let dim = fn_sampler.usize_in(1, 3);
            fn_sampler.max_affine(dim, 6)
        })
        .collect();

    suites.push(rotation_suite());
    suites.push(potential_suite(config, &functions));
    suites.push(slice_suite(config, &functions));
    suites.push(normal_cone_suite(config));
    suites.push(sublinear_suite(config));
    suites.push(epigraph_conditions_suite(config));
    suites.push(level_lemma_suite(config, &functions));
    suites.push(lifted_operator_suite(config));
    suites.push(conjugacy_suite(config));

    let all_passed = suites.iter().all(SuiteOutcome::passed);
    SelftestReport {
        seed: config.seed,
        instances: config.instances,
        vacuous: false,
        all_passed,
        suites,
    }
}

/// The quarter-turn operator: monotone, yet carrying a chain with cycle
/// sum exactly -2.
pub fn rotation_operator() -> FiniteOperator<Rat> {
    let rot = |x: i64, y: i64| {
        (
            crate::ratvec(&[x, y]),
            crate::ratvec(&[-y, x]),
        )
    };
    FiniteOperator::new(vec![rot(1, 0), rot(0, 1), rot(-1, 0)], 2)
        .expect("fixed pairs are well-formed")
}

fn rotation_suite() -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Rotation");
    let t = rotation_operator();
    let monotone = t.is_monotone().holds();
    let cycle_ok = match t.is_cyclically_monotone() {
        CyclicVerdict::Violation(v) => {
            v.cycle_sum == rat(-2, 1) && v.recompute_sum(&t) == v.cycle_sum
        }
        CyclicVerdict::CyclicallyMonotone => false,
    };
    suite.record(monotone && cycle_ok, || FailureRecord {
        case: 0,
        detail: format!(
            "expected monotone with a cycle of sum -2, got monotone={monotone}, cycle_ok={cycle_ok}"
        ),
        instance: operator_json(&t),
    });
    suite
}

fn potential_suite(config: &SelftestConfig, functions: &[MaxAffine<Rat>]) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Rockafellar");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(1));
    for (case, f) in functions.iter().enumerate() {
        let points = sampler.usize_in(2, 12);
        let t = sampler.subdifferential_sample(f, points);
        let passed = potential_roundtrip_holds(&t);
        suite.record(passed, || {
            let shrunk = shrink_operator(t.clone(), |s| !potential_roundtrip_holds(s));
            FailureRecord {
                case,
                detail: "subdifferential sample failed the potential round trip".to_owned(),
                instance: operator_json(&shrunk),
            }
        });
    }
    suite
}

/// Cyclic monotonicity of a subdifferential sample plus the containment
/// `T` inside the subdifferential of its reconstructed potential.
pub fn potential_roundtrip_holds(t: &FiniteOperator<Rat>) -> bool {
    if !t.is_cyclically_monotone().holds() {
        return false;
    }
    let Ok(g) = t.rockafellar_potential(0) else {
        return false;
    };
    t.pairs().iter().all(|(x, xstar)| {
        g.subdifferential(x)
            .and_then(|sd| sd.member(xstar))
            .unwrap_or(false)
    })
}

fn slice_suite(config: &SelftestConfig, functions: &[MaxAffine<Rat>]) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Cor3.3");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(2));
    for (case, f) in functions.iter().enumerate() {
        let xs: Vec<_> = (0..config.samples).map(|_| sampler.vector(f.dim())).collect();
        let report = check_epi_slice_equals_subdifferential(f, &xs).expect("dims agree");
        suite.record(conclusion_true(&report), || FailureRecord {
            case,
            detail: "dual slice of the epigraph normal cone differed from the subdifferential"
                .to_owned(),
            instance: function_json(f),
        });
    }
    suite
}

fn normal_cone_suite(config: &SelftestConfig) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Prop2.1+Thm2.3");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(3));
    for case in 0..config.instances {
        let dim = sampler.usize_in(1, 3);
        let rays = sampler.usize_in(2, 4);
        let t = sampler.normal_cone_operator(dim, rays);
        let seed = config.seed.wrapping_add(1000 + case as u64);
        let report = check_normal_cone_characterization(&t, config.minty_samples, seed);
        // A Minty failure here is fatal: Id + N_C is onto in finite
        // dimension, so it can only indicate an implementation bug.
        suite.record(conclusion_true(&report), || {
            let shrunk = shrink_operator(t.clone(), |s| {
                !conclusion_true(&check_normal_cone_characterization(
                    s,
                    config.minty_samples,
                    seed,
                ))
            });
            FailureRecord {
                case,
                detail: "normal-cone characterization failed (fatal if the Minty samples failed)"
                    .to_owned(),
                instance: operator_json(&shrunk),
            }
        });
    }
    suite
}

fn sublinear_suite(config: &SelftestConfig) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Cor2.2+Thm2.5");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(4));
    for case in 0..config.instances {
        let dim = sampler.usize_in(1, 3);
        let d = sampler.polytope(dim, 5);
        let extra = sampler.usize_in(1, 4);
        let t = sampler.support_sample_operator(&d, extra);
        let seed = config.seed.wrapping_add(2000 + case as u64);
        let report = check_sublinear_characterization(&t, config.minty_samples, seed);
        let mut passed = conclusion_true(&report);
        // Cross-check: the candidate function evaluates to the support
        // value of D everywhere.
        if passed {
            let s = sublinear_from_polytope(&d).expect("sampled polytope has no rays");
            for _ in 0..config.samples {
                let x = sampler.vector(dim);
                let lhs = Extended::Finite(s.evaluate(&x).expect("dims agree"));
                let rhs = d.support_value(&x).expect("nonempty");
                if lhs != rhs {
                    passed = false;
                    break;
                }
            }
        }
        suite.record(passed, || FailureRecord {
            case,
            detail: "sublinear characterization or support cross-check failed".to_owned(),
            instance: operator_json(&t),
        });
    }
    suite
}

fn epigraph_conditions_suite(config: &SelftestConfig) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Lem3.1");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(5));
    let cases = (config.instances / 2).max(1);
    for case in 0..cases {
        let dim_x = sampler.usize_in(1, 2);
        let c = sampler.epigraph_set(dim_x, 4);
        let intact = epigraph_conditions(&c).expect("lifted dimension");
        // The upward ray sits at index 0 by construction; dropping it must
        // flip condition (iii), adding the downward ray must flip (ii).
        let without_up = VPolyhedron::new(
            c.vertices().to_vec(),
            c.rays()[1..].to_vec(),
            c.dim(),
        )
        .expect("same dimension");
        let dropped = epigraph_conditions(&without_up).expect("lifted dimension");
        let mut with_down_rays = c.rays().to_vec();
        with_down_rays.push(Vector::zero(dim_x).with_appended(rat(-1, 1)));
        let with_down = VPolyhedron::new(c.vertices().to_vec(), with_down_rays, c.dim())
            .expect("same dimension");
        let added = epigraph_conditions(&with_down).expect("lifted dimension");

        let passed = intact.all_hold() && !dropped.cond_iii && !added.cond_ii;
        suite.record(passed, || FailureRecord {
            case,
            detail: format!(
                "epigraph conditions: intact={:?} dropped_iii={} added_ii={}",
                (intact.cond_i, intact.cond_ii, intact.cond_iii),
                dropped.cond_iii,
                added.cond_ii
            ),
            instance: set_json(&c),
        });
    }
    suite
}

fn level_lemma_suite(config: &SelftestConfig, functions: &[MaxAffine<Rat>]) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Lem3.2");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(6));
    for (case, f) in functions.iter().enumerate() {
        let mut passed = true;
        for triple in 0..config.minty_samples {
            let x = sampler.vector(f.dim());
            let offset = sampler.positive_rat();
            let fx = f.evaluate(&x).expect("dims agree");
            let lambda = if triple % 2 == 0 {
                fx.clone() + offset
            } else {
                fx.clone() - offset
            };
            let xstar = sampler.vector(f.dim());
            let report = check_vertical_normal_level(f, &x, &lambda, &xstar)
                .expect("dims agree");
            // Off-level points admit no vertical normal, so the check must
            // come back vacuous, never a member.
            let member = report.certificates.iter().any(|c| {
                matches!(
                    c,
                    crate::checks::Certificate::LevelEquality { member: true, .. }
                )
            });
            if member {
                passed = false;
                break;
            }
        }
        suite.record(passed, || FailureRecord {
            case,
            detail: "found a vertical normal at a level different from f(x)".to_owned(),
            instance: function_json(f),
        });
    }
    suite
}

fn lifted_operator_suite(config: &SelftestConfig) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("Prop3.4");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(7));
    let cases = (config.instances / 2).max(1);
    for case in 0..cases {
        let dim = sampler.usize_in(1, 2);
        let f = sampler.max_affine(dim, 4);
        // Sample the epigraph normal cone on the graph: pairs
        // ((x, f(x)), (a, -1)) for active slopes a, plus the zero pair.
        let mut pairs = Vec::new();
        for _ in 0..sampler.usize_in(2, 4) {
            let x = sampler.vector(dim);
            let fx = f.evaluate(&x).expect("dims agree");
            let lifted = x.with_appended(fx);
            let sd = f.subdifferential(&x).expect("dims agree");
            let pick = sampler.usize_in(0, sd.vertices().len() - 1);
            let dual = sd.vertices()[pick].with_appended(rat(-1, 1));
            pairs.push((lifted.clone(), dual));
            pairs.push((lifted, Vector::zero(dim + 1)));
        }
        let a = FiniteOperator::new(pairs, dim + 1).expect("lifted pairs share dim");
        let report = check_lifted_operator_subdifferential(&a, config.grid_radius)
            .expect("lifted dimension");
        suite.record(conclusion_true(&report), || {
            let shrunk = shrink_operator(a.clone(), |s| {
                check_lifted_operator_subdifferential(s, config.grid_radius)
                    .map(|r| !conclusion_true(&r))
                    .unwrap_or(false)
            });
            FailureRecord {
                case,
                detail: "lifted operator slice escaped the reconstructed subdifferential"
                    .to_owned(),
                instance: operator_json(&shrunk),
            }
        });
    }
    suite
}

fn conjugacy_suite(config: &SelftestConfig) -> SuiteOutcome {
    let mut suite = SuiteOutcome::new("ConjugateDuality");
    let mut sampler = InstanceSampler::new(config.seed.wrapping_add(8));
    let cases = (config.instances / 2).max(1);
    for case in 0..cases {
        let dim = sampler.usize_in(1, 3);
        let c = sampler.polytope(dim, 5);
        let xstars: Vec<_> = (0..config.samples).map(|_| sampler.vector(dim)).collect();
        let report = verify_conjugate_duality(&c, &xstars).expect("nonempty");
        suite.record(report.holds(), || FailureRecord {
            case,
            detail: format!("{} conjugacy discrepancies", report.discrepancies.len()),
            instance: set_json(&c),
        });
    }
    suite
}

/// Render the selftest report as deterministic JSON.
pub fn report_json(report: &SelftestReport) -> String {
    to_json_string(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SelftestConfig {
        SelftestConfig {
            seed: 42,
            instances: 6,
            samples: 4,
            minty_samples: 4,
            grid_radius: 2,
        }
    }

    #[test]
    #[cfg_attr(feature = "fault-inject", ignore = "fault injection breaks the suite")]
    fn small_selftest_passes() {
        let report = run(&small_config());
        for suite in &report.suites {
            assert!(
                suite.passed(),
                "suite {} failed: {:?}",
                suite.name,
                suite.failures
            );
        }
        assert!(report.all_passed);
        assert!(!report.vacuous);
    }

    #[test]
    fn selftest_is_deterministic() {
        let a = report_json(&run(&small_config()));
        let b = report_json(&run(&small_config()));
        assert_eq!(a, b);
    }

    #[test]
    fn zero_instances_is_vacuous() {
        let report = run(&SelftestConfig {
            instances: 0,
            ..small_config()
        });
        assert!(report.vacuous);
        assert!(report.all_passed);
        assert!(report.suites.is_empty());
    }

    #[test]
    fn shrinking_keeps_failures_minimal() {
        // Shrink against "contains a monotonicity violation": the rotation
        // pairs are all needed for the cycle, but a planted bad pair lets
        // the shrinker cut everything else away.
        let mut pairs = rotation_operator().pairs().to_vec();
        pairs.push((crate::ratvec(&[5, 5]), crate::ratvec(&[100, 100])));
        pairs.push((crate::ratvec(&[6, 6]), crate::ratvec(&[-100, -100])));
        let t = FiniteOperator::new(pairs, 2).unwrap();
        let shrunk = shrink_operator(t, |s| !s.is_monotone().holds());
        assert_eq!(shrunk.len(), 2);
        assert!(!shrunk.is_monotone().holds());
    }

    #[cfg(feature = "fault-inject")]
    #[test]
    fn fault_injection_is_caught() {
        // The injected fault flips one inequality in the monotonicity
        // check, so the quarter-turn operator (all pairwise gaps zero) is
        // now reported non-monotone and the rotation suite must fail.
        let report = run(&small_config());
        assert!(!report.all_passed);
        let rotation = &report.suites[0];
        assert!(!rotation.passed());
    }
}
