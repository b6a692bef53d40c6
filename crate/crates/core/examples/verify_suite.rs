//! Runs every verification suite and prints one line per suite.

use std::time::Instant;

fn main() {
    let mut all = true;
    for id in 1..=9 {
        let start = Instant::now();
        let rep = tower_forge::verify::run_suite(id).expect("suite id");
        all &= rep.passed;
        println!(
            "[{}] {} {:<36} checked {:>6}  {:.2?}",
            rep.id,
            if rep.passed { "PASS" } else { "FAIL" },
            rep.name,
            rep.checked,
            start.elapsed()
        );
        for f in &rep.failures {
            println!("      {f}");
        }
    }
    std::process::exit(if all { 0 } else { 1 });
}
