//! The Milnor-basis action St^{S,R} on explicit polynomials.

use steenrod_dickson::steenrod::{bockstein, cartan_product, power_op, st_apply, MilnorIndex};
use steenrod_dickson::{Prime, Result, SuperPoly};

fn main() -> Result<()> {
    let p = Prime::new(3)?;
    let f = SuperPoly::parse("x1*x2", p, 2)?;
    let y = SuperPoly::parse("y1^2*y2", p, 2)?;

    println!("beta(x1*x2) = {}", bockstein(&f)?);
    println!("P^1(y1^2*y2) = {}", power_op(1, &y)?);
    println!("P^3(y1^2*y2) = {} (the cube)", power_op(3, &y)?);

    let idx = MilnorIndex::new(&[0, 1], &[])?;
    println!("{idx}(x1*x2) = {}", st_apply(&idx, &f)?);

    let idx = MilnorIndex::new(&[1], &[1, 1])?;
    let g = SuperPoly::parse("x1*y2 + y1", p, 2)?;
    let direct = st_apply(&idx, &(&g * &y))?;
    let split = cartan_product(&idx, &g, &y)?;
    println!(
        "{idx} on a product: direct and Cartan agree = {}",
        direct == split
    );
    println!("degree of {idx}: {}", idx.degree(p).unwrap());
    Ok(())
}
