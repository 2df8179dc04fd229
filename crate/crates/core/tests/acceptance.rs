//! Acceptance run: every criterion at full sample size with the fixed seed,
//! one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use bicyclic::selftest::{run_suite, SelfTestConfig, Suite, SuiteReport};

const CRITERIA: [(u32, Suite, &str); 8] = [
    (
        1,
        Suite::Associativity,
        "associativity over the named and random families",
    ),
    (
        2,
        Suite::Inverse,
        "inverse axioms, inverse uniqueness, commuting idempotents",
    ),
    (
        3,
        Suite::NaturalOrder,
        "natural-order criterion against a = a a^-1 b",
    ),
    (
        4,
        Suite::Green,
        "Green criteria against witnesses and sweeps",
    ),
    (5, Suite::Oracle, "product against partial-map composition"),
    (6, Suite::Classification, "classification golden cases"),
    (7, Suite::Morphisms, "morphism suites"),
    (8, Suite::Family, "family closure and shift-subset decision"),
];

fn describe(report: &SuiteReport) -> String {
    report
        .properties
        .iter()
        .map(|p| {
            let mut s = format!("{} {}/{}", p.name, p.passed, p.passed + p.failed);
            if let (Some(seed), Some(why)) = (p.failing_seed, &p.failure) {
                s.push_str(&format!(" [seed {seed:#x}: {why}]"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() -> ExitCode {
    let cfg = SelfTestConfig::default();
    let start = Instant::now();
    let mut failed = Vec::new();
    for (n, suite, title) in CRITERIA {
        let t = Instant::now();
        let report = run_suite(suite, &cfg);
        let verdict = if report.ok() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {n} ({title}) in {:.1}s: {}",
            t.elapsed().as_secs_f64(),
            describe(&report)
        );
        if !report.ok() {
            failed.push(n);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
