//! Random inputs shared by the integration suites. Everything is seeded so
//! failures reproduce.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steenrod_dickson::superpoly::{Matrix, SuperMonomial, SuperPoly};
use steenrod_dickson::Prime;

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A homogeneous element of `P_2` with exterior mask `ext` and
/// `y`-degree `half` (so total degree `|ext| + 2·half`), up to `terms`
/// random monomials.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    p: Prime,
    ext: u32,
    half: u64,
    terms: usize,
) -> SuperPoly {
    let mut f = SuperPoly::zero(p, 2);
    for _ in 0..terms {
        let a = rng.gen_range(0..=half);
        let c = p.scalar(rng.gen_range(1..p.get() as i64));
        let m = SuperPoly::term(p, SuperMonomial::from_parts(ext, &[a, half - a]), c);
        f = &f + &m;
    }
    f
}

/// A random homogeneous element with a random exterior part.
pub fn random_element(rng: &mut impl Rng, p: Prime, max_half: u64) -> SuperPoly {
    let ext = [0u32, 1, 2, 3][rng.gen_range(0..4)];
    let half = rng.gen_range(0..=max_half);
    random_homogeneous(rng, p, ext, half, 4)
}

/// A random invertible 2×2 matrix over `F_p`.
pub fn random_gl2(rng: &mut impl Rng, p: Prime) -> Matrix {
    loop {
        let q = p.get() as i64;
        let rows: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..2).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let m = Matrix::from_rows(p, &rows).unwrap();
        if !m.det().is_zero() {
            return m;
        }
    }
}
