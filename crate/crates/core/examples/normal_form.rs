//! Writing invariant polynomials in Dickson-Mui normal form.

use steenrod_dickson::dickson::{DicksonAlgebra, Generator};
use steenrod_dickson::steenrod::{st_apply, MilnorIndex};
use steenrod_dickson::{Prime, Result};

fn main() -> Result<()> {
    let p = Prime::new(5)?;
    let alg = DicksonAlgebra::new(p)?;
    let g = |x| alg.gen(x).clone();

    let r0r1 = &g(Generator::R0) * &g(Generator::R1);
    println!("R0*R1 = {}", alg.decompose(&r0r1)?);

    let q = &g(Generator::Q0).pow(2)? + &g(Generator::Q1).pow(3)?;
    println!("Q0^2 + Q1^3 = {}", alg.decompose(&q)?);

    for i in [0, 5, 6, 11] {
        let image = st_apply(&MilnorIndex::new(&[1], &[i])?, &g(Generator::R1))?;
        println!("St^((1),({i})) R1 = {}", alg.decompose(&image)?);
    }

    match alg.decompose(&g(Generator::L2)) {
        Ok(e) => println!("L2 = {e}"),
        Err(e) => println!("L2 has no normal form: {e}"),
    }
    Ok(())
}
