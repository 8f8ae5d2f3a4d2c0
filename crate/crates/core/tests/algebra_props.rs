//! Ring laws of the superalgebra `E(x1, x2) ⊗ P(y1, y2)`.

mod common;

use proptest::prelude::*;
use steenrod_dickson::superpoly::SuperPoly;
use steenrod_dickson::{Error, Prime};

fn prime_and_seed() -> impl Strategy<Value = (Prime, u64)> {
    (prop::sample::select(vec![3u64, 5, 7]), any::<u64>()).prop_map(|(p, s)| (common::prime(p), s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let [f, g, h] = [0; 3].map(|_| common::random_element(&mut rng, p, 6));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn multiplication_distributes((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let [f, g, h] = [0; 3].map(|_| common::random_element(&mut rng, p, 6));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn graded_commutativity((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let [f, g] = [0; 2].map(|_| common::random_element(&mut rng, p, 6));
        let sign = match (f.bidegree(), g.bidegree()) {
            (Ok((_, a)), Ok((_, b))) => p.sign(a * b),
            _ => return Ok(()),
        };
        prop_assert_eq!(&f * &g, (&g * &f).scale(sign));
    }

    #[test]
    fn degrees_add((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let [f, g] = [0; 2].map(|_| common::random_element(&mut rng, p, 6));
        let fg = &f * &g;
        if !fg.is_zero() {
            let (ef, df) = f.bidegree().unwrap();
            let (eg, dg) = g.bidegree().unwrap();
            prop_assert_eq!(fg.bidegree().unwrap(), (ef + eg, df + dg));
        }
    }

    #[test]
    fn substitution_composes((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 5);
        let a = common::random_gl2(&mut rng, p);
        let b = common::random_gl2(&mut rng, p);
        let twice = f.substitute(&a).unwrap().substitute(&b).unwrap();
        prop_assert_eq!(twice, f.substitute(&a.mul(&b)).unwrap());
    }

    #[test]
    fn substitution_is_multiplicative((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let [f, g] = [0; 2].map(|_| common::random_element(&mut rng, p, 4));
        let m = common::random_gl2(&mut rng, p);
        let lhs = (&f * &g).substitute(&m).unwrap();
        prop_assert_eq!(lhs, &f.substitute(&m).unwrap() * &g.substitute(&m).unwrap());
    }

    #[test]
    fn exact_division_round_trips((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 6);
        let half = rand::Rng::gen_range(&mut rng, 0..5);
        let d = common::random_homogeneous(&mut rng, p, 0, half, 3);
        if d.is_zero() {
            return Ok(());
        }
        let product = &f * &d;
        prop_assert_eq!(product.exact_div(&d).unwrap(), f);
    }

    #[test]
    fn display_parses_back((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 8);
        prop_assert_eq!(SuperPoly::parse(&f.to_string(), p, 2).unwrap(), f);
    }
}

#[test]
fn division_failures_are_reported() {
    let p = common::prime(5);
    let y1 = SuperPoly::y(p, 2, 1);
    let y2 = SuperPoly::y(p, 2, 2);
    let x1 = SuperPoly::x(p, 2, 1);
    assert_eq!((&y1 + &y2).exact_div(&y2), Err(Error::NotDivisible));
    assert_eq!(y1.exact_div(&x1), Err(Error::DivisorHasExteriorPart));
}
