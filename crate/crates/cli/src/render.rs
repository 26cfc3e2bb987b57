//! Plain-text rendering of reports. Output is deterministic: a pure
//! function of the report content, no timestamps, no paths, no color.

use monotope_core::checks::{Certificate, CheckReport, Witness};
use monotope_core::selftest::SelftestReport;
use monotope_core::Rat;

pub fn render_report(report: &CheckReport<Rat>) -> String {
    let mut out = String::new();
    out.push_str(&format!("result: {}\n", report.result_id.label()));
    out.push_str(&format!("seed: {}\n", report.deterministic_seed));
    for h in &report.hypotheses {
        out.push_str(&format!(
            "hypothesis: {} -- {}\n",
            h.name,
            if h.holds { "holds" } else { "FAILS" }
        ));
        if let Some(w) = &h.witness {
            if !h.holds {
                out.push_str(&format!("  witness: {}\n", render_witness(w)));
            }
        }
    }
    match report.conclusion {
        Some(true) => out.push_str("conclusion: true\n"),
        Some(false) => out.push_str("conclusion: FALSE\n"),
        None => out.push_str("conclusion: skipped (hypothesis failure)\n"),
    }
    let total = report.certificates.len();
    let failing: Vec<&Certificate<Rat>> = report
        .certificates
        .iter()
        .filter(|c| !c.holds())
        .collect();
    out.push_str(&format!(
        "certificates: {} checked, {} failing\n",
        total,
        failing.len()
    ));
    for c in failing {
        out.push_str(&format!("  failing: {}\n", render_certificate(c)));
    }
    out
}

pub fn render_witness(w: &Witness<Rat>) -> String {
    match w {
        Witness::Point(p) => format!("point {p}"),
        Witness::Monotonicity(v) => format!(
            "pairs #{} ({}, {}) and #{} ({}, {}) with gap {}",
            v.index1, v.pair1.0, v.pair1.1, v.index2, v.pair2.0, v.pair2.1, v.gap
        ),
        Witness::Cycle(v) => format!("cycle {:?} with sum {}", v.indices, v.cycle_sum),
    }
}

fn render_certificate(c: &Certificate<Rat>) -> String {
    match c {
        Certificate::NormalMembership { x, xstar, member } => {
            format!("normal membership at x={x}, x*={xstar}: {member}")
        }
        Certificate::Subgradient { x, xstar, holds } => {
            format!("subgradient at x={x}, x*={xstar}: {holds}")
        }
        Certificate::SupportMaximizer {
            direction,
            point,
            member,
            attained,
            support,
        } => format!(
            "support maximization at direction={direction}, point={point}: member={member}, attained={attained}, support={support}"
        ),
        Certificate::MintyPoint { z, point, image, holds } => {
            format!("minty sample z={z} -> point={point}, image={image}: {holds}")
        }
        Certificate::LevelEquality {
            x,
            lambda,
            value,
            member,
        } => format!("level at x={x}: lambda={lambda}, f(x)={value}, member={member}"),
        Certificate::Separation { x, xstar, witness } => {
            format!("separation at x={x}, x*={xstar} by witness {witness}")
        }
        Certificate::Condition { name, holds, .. } => format!("condition '{name}': {holds}"),
        Certificate::SetsMatch { x, equal } => format!("sets match at x={x}: {equal}"),
        Certificate::ConstructedSet { name, vertices } => {
            format!("{name} with {} generators", vertices.len())
        }
        Certificate::SubReport(r) => format!(
            "sub-report {} with conclusion {:?}",
            r.result_id.label(),
            r.conclusion
        ),
    }
}

pub fn render_selftest(report: &SelftestReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "selftest: seed={} instances={}\n",
        report.seed, report.instances
    ));
    if report.vacuous {
        out.push_str("warning: zero instances requested; vacuous pass\n");
    }
    for suite in &report.suites {
        out.push_str(&format!(
            "{}: {}/{} {}\n",
            suite.name,
            suite.passes,
            suite.cases,
            if suite.passed() { "PASS" } else { "FAIL" }
        ));
        for failure in &suite.failures {
            out.push_str(&format!(
                "  case {}: {}\n  counterexample: {}\n",
                failure.case, failure.detail, failure.instance
            ));
        }
    }
    out.push_str(if report.all_passed {
        "selftest: PASS\n"
    } else {
        "selftest: FAIL\n"
    });
    out
}
