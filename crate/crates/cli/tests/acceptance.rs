//! Acceptance suite: every criterion at full size, one PASS/FAIL line each.
//! Runs without the libtest harness so the lines print in order.

use std::process::ExitCode;
use std::time::Duration;

use stonedual_cli::selftest;

struct Criterion {
    number: usize,
    suite: &'static str,
    title: &'static str,
    limit: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, suite: "duality", title: "duality round trip on I(1..4)", limit: Some(Duration::from_secs(30)) },
    Criterion { number: 2, suite: "classify", title: "symmetric inverse monoid classifier", limit: None },
    Criterion {
        number: 3,
        suite: "semilattices",
        title: "Booleanization on all semilattices with zero up to 6 elements",
        limit: Some(Duration::from_secs(300)),
    },
    Criterion { number: 4, suite: "completion", title: "distributive completion on the corpus", limit: None },
    Criterion { number: 5, suite: "lenz", title: "Lenz arrow against enumeration", limit: Some(Duration::from_secs(60)) },
    Criterion { number: 6, suite: "action", title: "products against partial maps", limit: None },
    Criterion { number: 7, suite: "codes", title: "maximal prefix codes", limit: None },
    Criterion { number: 8, suite: "thompson", title: "tree pair arithmetic", limit: Some(Duration::from_secs(120)) },
    Criterion { number: 9, suite: "ideals", title: "tightly closed ideals and components", limit: None },
    Criterion { number: 10, suite: "normal", title: "normal forms in the Cuntz monoids", limit: None },
];

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut failures = 0;
    for c in CRITERIA {
        let report = selftest::run(c.suite, 0, None).expect("known suite");
        let elapsed = report.elapsed;
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let pass = report.passed && in_time;
        if !pass {
            failures += 1;
        }
        let limit = c.limit.map(|l| format!(" limit {}s", l.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {:>2} {}: {} [{} checked, {:.2}s{limit}]",
            if pass { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            report.detail,
            report.checked,
            elapsed.as_secs_f64(),
        );
        if report.passed && !in_time {
            println!("     over the time limit");
        }
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
