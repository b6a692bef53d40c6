//! h1/h2 of small groups and the central extensions by Z/p.

use tower_forge::cohomology::{all_classes, extension_basis, h2_bruteforce, h2_fast, verify_h_bounds, ExtensionInvariants};
use tower_forge::pgroup::catalog;

fn main() -> tower_forge::Result<()> {
    for (name, p) in [("c2", 2), ("v4", 2), ("q8", 2), ("d8", 2), ("heisenberg", 3)] {
        let g = catalog(name, p)?;
        println!("{name:>10}: h1 {} h2 {} (brute force {})", g.h1(), h2_fast(&g), h2_bruteforce(&g)?);
    }

    let v4 = catalog("v4", 2)?;
    println!("\nextensions 1 -> Z/2 -> E -> V4 -> 1:");
    for (idx, ext) in all_classes(&extension_basis(&v4)?) {
        let e = ExtensionInvariants::of(&ext.total_group());
        println!(
            "  class {idx}: split {:<5} exponent {} abelian {:<5} |Z| {}",
            ext.is_split(),
            e.exponent,
            e.abelian,
            e.center_order
        );
    }

    let rep = verify_h_bounds(&catalog("c4xc2", 2)?)?;
    println!("\nc4xc2: {} classes checked, {} violations", rep.classes_checked, rep.violations);
    Ok(())
}
