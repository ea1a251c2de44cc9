//! Acceptance run: one line per criterion, nonzero exit if any fails or overruns.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fatdelta::audit::{self, CheckResult};
use fatdelta::RuleId;

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Vec<CheckResult>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            number: 1,
            title: "simplicial identities, n <= 6",
            limit: secs(1),
            run: || vec![audit::simplicial_identities(6)],
        },
        Criterion {
            number: 2,
            title: "object census, m <= 10",
            limit: secs(1),
            run: || vec![audit::object_census(10)],
        },
        Criterion {
            number: 3,
            title: "relation soundness, all eleven rules, m <= 5",
            limit: secs(60),
            run: || vec![audit::relations(5, &RuleId::ALL)],
        },
        Criterion {
            number: 4,
            title: "derived relations from the primary ones, m <= 4",
            limit: secs(60),
            run: || vec![audit::derivations(4, 200_000)],
        },
        Criterion {
            number: 5,
            title: "factorization round trip, m <= 5",
            limit: secs(120),
            run: || vec![audit::factorization(5)],
        },
        Criterion {
            number: 6,
            title: "normal forms of words of length <= 4, m <= 4",
            limit: secs(120),
            run: || vec![audit::normal_forms(4, 4, &RuleId::ALL)],
        },
        Criterion {
            number: 7,
            title: "ternary factorization, m <= 4",
            limit: secs(60),
            run: || vec![audit::ternary(4)],
        },
        Criterion {
            number: 8,
            title: "adjunctions, m, k <= 4",
            limit: secs(10),
            run: || vec![audit::adjunctions(4)],
        },
        Criterion {
            number: 9,
            title: "opfibration, m <= 4",
            limit: secs(30),
            run: || vec![audit::opfibration(4, 4)],
        },
        Criterion {
            number: 10,
            title: "monoidal laws and the worked examples",
            limit: secs(5),
            run: || vec![audit::monoidal(3, 4)],
        },
        Criterion {
            number: 11,
            title: "pushouts, pullbacks, active-inert and epi-mono factorizations",
            limit: secs(30),
            run: || {
                vec![
                    audit::pushouts(4, 4),
                    audit::pullbacks(4, 4),
                    audit::active_inert(5, 4),
                    audit::epi_mono(5),
                ]
            },
        },
    ]
}

fn main() -> ExitCode {
    let mut all_passed = true;
    for c in criteria() {
        let start = Instant::now();
        let results = (c.run)();
        let elapsed = start.elapsed();
        let cases: usize = results.iter().map(|r| r.cases).sum();
        let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.passed()).collect();
        let in_time = elapsed <= c.limit;
        let passed = failed.is_empty() && in_time && cases > 0;
        all_passed &= passed;
        println!(
            "criterion {:>2}: {} - {} ({} cases, {:.2?} of {:?})",
            c.number,
            if passed { "PASS" } else { "FAIL" },
            c.title,
            cases,
            elapsed,
            c.limit
        );
        for r in failed {
            println!(
                "    {}: {} of {} failed; first: {}",
                r.name,
                r.failures,
                r.cases,
                r.first_counterexample.as_deref().unwrap_or("-")
            );
        }
        if !in_time {
            println!("    over the time limit");
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
