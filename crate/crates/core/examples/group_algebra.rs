//! The augmentation tuple in F_p[G]^{h1} and free ranks of modules.

use tower_forge::fpg_module::{
    annihilator, augmentation_generators, free_rank, is_torsion, regular_module, stack, trace_element, trivial_module,
};
use tower_forge::pgroup::catalog;

fn main() -> tower_forge::Result<()> {
    let g = catalog("heisenberg", 3)?;
    let xs = augmentation_generators(&g);
    let m = regular_module(&g, g.h1());
    let ann = annihilator(&g, &m, &stack(&g, &xs))?;
    println!("G = heisenberg(3): h1 = {}, dim F_p[G]^h1 = {}", g.h1(), m.dim());
    println!("annihilator dim {}; contains T_G: {}", ann.dim(), ann.contains(trace_element(&g).coeffs()));

    for lambda in 0..3 {
        let module = regular_module(&g, lambda).direct_sum(&trivial_module(&g, 2));
        println!(
            "F_p[G]^{lambda} + trivial^2: dim {}, free rank {}, torsion {}",
            module.dim(),
            free_rank(&g, &module),
            is_torsion(&g, &module)
        );
    }
    Ok(())
}
