//! Multiplication, substitution and exact division in E(x1, x2) ⊗ P(y1, y2).

use steenrod_dickson::{Matrix, Prime, Result, SuperPoly};

fn main() -> Result<()> {
    let p = Prime::new(3)?;
    let f = SuperPoly::parse("x1*y2 - x2*y1", p, 2)?;
    let g = SuperPoly::parse("x2 + 2*y1^2*x1", p, 2)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("f*g = {}", &f * &g);
    println!("g*f = {}", &g * &f);
    println!("f*f = {}", &f * &f);

    let swap = Matrix::from_rows(p, &[vec![0, 1], vec![1, 0]])?;
    println!("f under x1 <-> x2: {}", f.substitute(&swap)?);

    let l2 = SuperPoly::parse("y1*y2^3 - y1^3*y2", p, 2)?;
    let h = SuperPoly::parse("x1*y1^2 + x2*y2^2", p, 2)?;
    let product = h.try_mul(&l2)?;
    println!("(h*L2)/L2 = {}", product.exact_div(&l2)?);
    println!("bidegree of h*L2: {:?}", product.bidegree()?);
    Ok(())
}
