//! Parse a presentation, collect products, and inspect a few invariants.

use tower_forge::pgroup::{catalog, center, quotient};
use tower_forge::PcGroup;

fn main() -> tower_forge::Result<()> {
    let q8 = PcGroup::parse("p=2 n=3\ng1^2 = g3\ng2^2 = g3\n[g2,g1] = g3\n")?;
    assert_eq!(q8, catalog("q8", 2)?);

    let (i, j) = (q8.generator(0), q8.generator(1));
    let k = q8.mul(&i, &j);
    println!("q8: order {}, exponent {}, h1 {}", q8.order(), q8.exponent(), q8.h1());
    println!("i*j = {:?}, j*i = {:?}", k.exponents(), q8.mul(&j, &i).exponents());
    println!("[j,i] = {:?}", q8.commutator(&j, &i).exponents());

    let z = center(&q8);
    let v4 = quotient(&q8, &z)?;
    println!("|Z(q8)| = {}, q8/Z has order {} and is abelian: {}", z.order(), v4.order(), v4.is_abelian());

    let report = q8.consistency_check();
    println!("consistency: {} words checked, passed {}", report.tests_run, report.passed());
    print!("{}", q8.direct_product(&catalog("c2", 2)?)?.to_text());
    Ok(())
}
