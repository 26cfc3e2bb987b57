//! Acceptance suite: one test per criterion, exact checks, zero tolerance.
//!
//! Every test prints a `criterion ...: PASS` line with its wall time (visible
//! under `cargo test -- --nocapture`) and asserts the stated runtime bound.

use std::process::Command;
use std::time::{Duration, Instant};

use monotope_core::checks::{
    check_normal_cone_characterization, check_sublinear_characterization,
    check_vertical_normal_level, slice_matches_subdifferential, Certificate, CheckId,
};
use monotope_core::cones::epigraph_conditions;
use monotope_core::convex::{sublinear_from_polytope, MaxAffine};
use monotope_core::operator::CyclicVerdict;
use monotope_core::poly::VPolyhedron;
use monotope_core::sample::InstanceSampler;
use monotope_core::scalar::Extended;
use monotope_core::selftest::rotation_operator;
use monotope_core::vector::Vector;
use monotope_core::{rat, Rat};

const SEED: u64 = 42;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {name}: PASS in {:.2}s", elapsed.as_secs_f64());
    assert!(
        elapsed < budget,
        "criterion {name} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
}

/// The shared pool of seeded random functions (dim <= 3, <= 6 pieces,
/// denominators <= 16) used by the criteria that quantify over "the same"
/// 100 functions.
fn function_pool() -> Vec<MaxAffine<Rat>> {
    let mut sampler = InstanceSampler::new(SEED);
    (0..100)
        .map(|_| {
            let dim = sampler.usize_in(1, 3);
            sampler.max_affine(dim, 6)
        })
        .collect()
}

#[test]
fn criterion_1_rotation_counterexample() {
    let started = Instant::now();
    let t = rotation_operator();
    assert!(t.is_monotone().holds(), "rotation samples are monotone");
    match t.is_cyclically_monotone() {
        CyclicVerdict::Violation(v) => {
            assert_eq!(v.cycle_sum, rat(-2, 1), "cycle sum must be exactly -2");
            assert_eq!(v.recompute_sum(&t), rat(-2, 1));
        }
        CyclicVerdict::CyclicallyMonotone => {
            panic!("rotation samples must fail cyclic monotonicity")
        }
    }
    // The command-line route reports the same certificate with exit code 3.
    let out = Command::new(env!("CARGO_BIN_EXE_monotope"))
        .args(["check-cyclic", "tests/fixtures/rotation.json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sum -2"), "stdout was: {text}");
    finish("1 (rotation counterexample)", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_rockafellar_round_trip() {
    let started = Instant::now();
    let functions = function_pool();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(1));
    let mut cyclic = 0;
    let mut contained = 0;
    for f in &functions {
        let points = sampler.usize_in(2, 12);
        let t = sampler.subdifferential_sample(f, points);
        if t.is_cyclically_monotone().holds() {
            cyclic += 1;
        }
        let g = t.rockafellar_potential(0).expect("sample is cyclically monotone");
        let all_in = t.pairs().iter().all(|(x, xstar)| {
            g.subdifferential(x).unwrap().member(xstar).unwrap()
        });
        if all_in {
            contained += 1;
        }
    }
    assert_eq!(cyclic, 100, "cyclic monotonicity must hold 100/100");
    assert_eq!(contained, 100, "T subset of del g must hold 100/100");
    finish("2 (potential round trip)", started, Duration::from_secs(10));
}

#[test]
fn criterion_3_dual_slice_equivalence() {
    let started = Instant::now();
    let functions = function_pool();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(2));
    let mut matches = 0;
    for f in &functions {
        for _ in 0..20 {
            let x = sampler.vector(f.dim());
            if slice_matches_subdifferential(f, &x).unwrap() {
                matches += 1;
            }
        }
    }
    assert_eq!(matches, 2000, "dual slice must equal the subdifferential 2000/2000");
    finish("3 (dual slice equivalence)", started, Duration::from_secs(10));
}

#[test]
fn criterion_4_normal_cone_inclusion_with_minty() {
    let started = Instant::now();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(3));
    let mut conclusions = 0;
    let mut minty_all = 0;
    for case in 0..100u64 {
        let dim = sampler.usize_in(1, 3);
        let rays = sampler.usize_in(2, 4);
        let t = sampler.normal_cone_operator(dim, rays);
        let report = check_normal_cone_characterization(&t, 50, SEED.wrapping_add(1000 + case));
        if report.conclusion == Some(true) {
            conclusions += 1;
        }
        let minty_pass = report.certificates.iter().any(|c| match c {
            Certificate::SubReport(r) => {
                r.result_id == CheckId::MintySample
                    && r.certificates.len() == 50
                    && r.certificates.iter().all(Certificate::holds)
            }
            _ => false,
        });
        if minty_pass {
            minty_all += 1;
        }
    }
    assert_eq!(conclusions, 100, "inclusion conclusion must hold 100/100");
    assert_eq!(minty_all, 100, "all 50 Minty samples must pass per instance");
    finish("4 (normal cone inclusion + Minty)", started, Duration::from_secs(20));
}

#[test]
fn criterion_5_sublinear_characterization() {
    let started = Instant::now();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(4));
    let mut conclusions = 0;
    let mut support_matches = 0;
    for case in 0..100u64 {
        let dim = sampler.usize_in(1, 3);
        let d = sampler.polytope(dim, 5);
        let extra = sampler.usize_in(1, 4);
        let t = sampler.support_sample_operator(&d, extra);
        let report = check_sublinear_characterization(&t, 10, SEED.wrapping_add(2000 + case));
        assert!(report.hypotheses_hold(), "sampled operator satisfies the hypotheses");
        if report.conclusion == Some(true) {
            conclusions += 1;
        }
        let s = sublinear_from_polytope(&d).unwrap();
        for _ in 0..20 {
            let x = sampler.vector(dim);
            if Extended::Finite(s.evaluate(&x).unwrap()) == d.support_value(&x).unwrap() {
                support_matches += 1;
            }
        }
    }
    assert_eq!(conclusions, 100, "characterization must hold 100/100");
    assert_eq!(support_matches, 2000, "support values must match exactly");
    finish("5 (sublinear characterization)", started, Duration::from_secs(10));
}

#[test]
fn criterion_6_epigraph_conditions() {
    let started = Instant::now();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(5));
    let mut intact_ok = 0;
    let mut dropped_flips = 0;
    let mut added_flips = 0;
    for _ in 0..50 {
        let dim_x = sampler.usize_in(1, 2);
        let c = sampler.epigraph_set(dim_x, 4);
        if epigraph_conditions(&c).unwrap().all_hold() {
            intact_ok += 1;
        }
        // The upward ray sits first by construction.
        let without_up =
            VPolyhedron::new(c.vertices().to_vec(), c.rays()[1..].to_vec(), c.dim()).unwrap();
        if !epigraph_conditions(&without_up).unwrap().cond_iii {
            dropped_flips += 1;
        }
        let mut rays = c.rays().to_vec();
        rays.push(Vector::zero(dim_x).with_appended(rat(-1, 1)));
        let with_down = VPolyhedron::new(c.vertices().to_vec(), rays, c.dim()).unwrap();
        if !epigraph_conditions(&with_down).unwrap().cond_ii {
            added_flips += 1;
        }
    }
    assert_eq!(intact_ok, 50, "all three conditions must hold 50/50");
    assert_eq!(dropped_flips, 50, "dropping the upward ray must flip (iii) 50/50");
    assert_eq!(added_flips, 50, "adding the downward ray must flip (ii) 50/50");
    finish("6 (epigraph conditions)", started, Duration::from_secs(5));
}

#[test]
fn criterion_7_no_vertical_normals_off_level() {
    let started = Instant::now();
    let functions = function_pool();
    let mut sampler = InstanceSampler::new(SEED.wrapping_add(6));
    let mut members = 0;
    for f in &functions {
        for triple in 0..50 {
            let x = sampler.vector(f.dim());
            let offset = sampler.positive_rat();
            let fx = f.evaluate(&x).unwrap();
            let lambda = if triple % 2 == 0 {
                fx.clone() + offset
            } else {
                fx.clone() - offset
            };
            let xstar = sampler.vector(f.dim());
            let report = check_vertical_normal_level(f, &x, &lambda, &xstar).unwrap();
            let member = report.certificates.iter().any(|c| {
                matches!(c, Certificate::LevelEquality { member: true, .. })
            });
            if member {
                members += 1;
            }
        }
    }
    assert_eq!(members, 0, "no vertical normal may exist off the graph level");
    finish("7 (level lemma search)", started, Duration::from_secs(10));
}

#[test]
fn criterion_8_cli_determinism() {
    let started = Instant::now();
    let run_selftest = || {
        let begun = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_monotope"))
            .args(["selftest", "--seed", "42", "--json"])
            .output()
            .expect("binary runs");
        (out, begun.elapsed())
    };
    let (first, first_time) = run_selftest();
    let (second, _) = run_selftest();
    assert_eq!(first.status.code(), Some(0), "selftest must pass");
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "selftest JSON must be byte-identical");
    assert!(!first.stdout.is_empty());
    assert!(
        first_time < Duration::from_secs(60),
        "selftest wall time must stay under a minute, took {first_time:?}"
    );
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed["all_passed"], serde_json::Value::Bool(true));
    finish("8 (selftest determinism)", started, Duration::from_secs(130));
}
