//! Closed forms for the action on invariants, in both variants.

use steenrod_dickson::closedform::{enum_i, thm31, thm42, thm43, thm44, Variant};
use steenrod_dickson::{Prime, Result};

fn main() -> Result<()> {
    let p = Prime::new(3)?;
    println!("I(0,6) at p=3: {:?}", enum_i(p, 0, 6));
    for i in [0, 3, 6] {
        println!(
            "P^{i} Q1: printed {}, corrected {}",
            thm31(p, 1, i, Variant::Printed)?,
            thm31(p, 1, i, Variant::Corrected)?
        );
    }
    for i in [3, 6, 7] {
        println!(
            "St^((0),({i})) R0: printed {}, corrected {}",
            thm42(p, 0, i, Variant::Printed)?,
            thm42(p, 0, i, Variant::Corrected)?
        );
    }
    println!("St^((4),(1)) R1 = {}", thm43(p, 4, 1, Variant::Corrected)?);
    println!("St^((3),(4)) R01 = {}", thm44(p, 3, 4)?);
    Ok(())
}
