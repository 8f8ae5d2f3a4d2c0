//! The eleven Dickson-Mui generators and their invariance.

use steenrod_dickson::dickson::{
    gl2_elements, is_gl2_invariant, is_invariant_under, DicksonAlgebra, Generator,
};
use steenrod_dickson::{Prime, Result};

fn main() -> Result<()> {
    let p = Prime::new(3)?;
    let alg = DicksonAlgebra::new(p)?;
    let group = gl2_elements(p);
    println!("|GL(2, F_3)| = {}", group.len());
    for g in Generator::ALL {
        let f = alg.gen(g);
        let (ext, deg) = f.bidegree()?;
        println!(
            "{g:<5} ext {ext} deg {deg:>3} terms {:>3} invariant: {} (all elements: {})",
            f.len(),
            is_gl2_invariant(f)?,
            is_invariant_under(f, &group)?
        );
    }
    Ok(())
}
