//! Construction schedules and bound certificates.

use tower_forge::pgroup::catalog;
use tower_forge::planner::{plan, FieldDescriptor, PlanMode};

fn main() -> tower_forge::Result<()> {
    let cases = [
        ("c4", 2, FieldDescriptor::new(1, 0, true)),
        ("q8", 2, FieldDescriptor::new(1, 0, true)),
        ("heisenberg", 3, FieldDescriptor::new(1, 0, false)),
        ("heisenberg", 3, FieldDescriptor::new(0, 1, true)),
    ];
    for (name, p, k0) in cases {
        let g = catalog(name, p)?;
        for mode in [PlanMode::PaperCounting, PlanMode::Refined] {
            let c = plan(&g, k0, mode)?;
            println!(
                "{name} mu_p={} {mode:<14}: degree {:>6} / {:<6} primes {:>2} / {:<2} ok {}",
                k0.mu_p, c.total_degree, c.degree_bound, c.total_primes, c.prime_bound, c.ok
            );
        }
    }

    let c = plan(&catalog("q8", 2)?, FieldDescriptor::new(1, 0, true), PlanMode::PaperCounting)?;
    println!("\n{}", serde_json::to_string_pretty(&c).expect("certificate serializes"));
    Ok(())
}
