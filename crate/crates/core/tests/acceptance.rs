//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails or overruns its time budget.
//! Runs without the libtest harness so the lines are never captured.

use std::time::{Duration, Instant};

use tower_forge::verify::{self, SuiteReport};

struct Criterion {
    id: u8,
    budget: Duration,
    run: fn() -> SuiteReport,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, budget: Duration::from_secs(10), run: verify::suite_annihilator },
    Criterion { id: 2, budget: Duration::from_secs(10), run: verify::suite_free_rank },
    Criterion { id: 3, budget: Duration::from_secs(300), run: verify::suite_h2 },
    Criterion { id: 4, budget: Duration::from_secs(600), run: verify::suite_bounds },
    Criterion { id: 5, budget: Duration::from_secs(60), run: verify::suite_planner },
    Criterion { id: 6, budget: Duration::from_secs(60), run: verify::suite_growth },
    Criterion { id: 7, budget: Duration::from_secs(30), run: verify::suite_h1_formula },
    Criterion { id: 8, budget: Duration::from_secs(60), run: verify::suite_genus },
];

fn line(id: u8, name: &str, ok: bool, detail: String) -> bool {
    println!("criterion {id} {name:<36} {} {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let mut all = true;
    let mut first_run = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let rep = (c.run)();
        let took = start.elapsed();
        assert_eq!(rep.id, c.id);
        let in_time = took <= c.budget;
        let detail = format!("checked {} in {took:.2?} (budget {:?})", rep.checked, c.budget);
        all &= line(c.id, rep.name, rep.passed && in_time, detail);
        for f in &rep.failures {
            println!("    {f}");
        }
        first_run.push(rep);
    }

    // Criterion 9: two runs of `verify --all`, compared byte for byte. The
    // first is assembled from the timed runs above.
    first_run.push(verify::suite_determinism());
    let first = serde_json::to_string(&verify::VerifyReport {
        passed: first_run.iter().all(|s| s.passed),
        suites: first_run,
    })
    .unwrap();
    let second = serde_json::to_string(&verify::run_all()).unwrap();
    let ok = first == second;
    all &= line(9, verify::SUITE_NAMES[8], ok, format!("{} bytes", first.len()));

    if !all {
        eprintln!("acceptance criteria failed");
        std::process::exit(1);
    }
}
