//! Residues, Lucas binomials and base-p digits.

use steenrod_dickson::{Prime, Result};

fn main() -> Result<()> {
    let p = Prime::new(5)?;
    let a = p.scalar(-7);
    println!("-7 mod 5 = {a}, inverse {}", p.inv(a).unwrap());
    println!("C(100, 25) mod 5 = {}", p.binom_mod_p(100, 25));
    println!(
        "C(10^12, 5^10) mod 5 = {}",
        p.binom_mod_p(1_000_000_000_000, 9_765_625)
    );
    println!("8!/(2!2!3!1!) mod 5 = {}", p.multinom_mod_p(8, &[2, 3, 1]));
    println!("digits of 2024 base 5: {:?}", p.padic_digits(2024).digits());
    println!("|R| for R = (0, 1): {}", p.abs_r(&[0, 1]).unwrap());
    println!("primitive root: {}", p.primitive_root());
    Ok(())
}
