//! Genus theory for imaginary quadratic fields and h1 over Q.

use tower_forge::quadratic::{fact24_instance, h1_check, reduced_forms, Discriminant, TameSetQ};

fn main() -> tower_forge::Result<()> {
    for d in [-3, -4, -84, -420, -1155] {
        let data = reduced_forms(&Discriminant::new(d)?)?;
        println!("D = {d:>6}: h = {:>3}, 2-rank {}, t - 1 = {}", data.h, data.two_rank, data.genus_rank);
    }

    for s in [vec![], vec![5], vec![3, 7], vec![5, 13], vec![3, 5, 7, 11]] {
        let rep = h1_check(&TameSetQ::new(s)?);
        println!("S = {:?}: formula {}, kummer {}, fields {:?}", rep.s, rep.h1_formula, rep.kummer_dim, rep.fields);
    }

    for q in [5, 7, 13, 17] {
        println!("{:?}", fact24_instance(q)?);
    }
    Ok(())
}
