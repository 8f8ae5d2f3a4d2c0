//! Structural properties of the Milnor-basis action.

mod common;

use proptest::prelude::*;
use steenrod_dickson::steenrod::{bockstein, cartan_product, st_apply, MilnorIndex};
use steenrod_dickson::superpoly::SuperPoly;
use steenrod_dickson::Prime;

fn prime_and_seed() -> impl Strategy<Value = (Prime, u64)> {
    (prop::sample::select(vec![3u64, 5, 7]), any::<u64>()).prop_map(|(p, s)| (common::prime(p), s))
}

/// `ℓ(S) <= 2` and `Σr <= 3`.
fn small_index() -> impl Strategy<Value = MilnorIndex> {
    let s = prop::sample::select(vec![
        vec![],
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
    ]);
    let r = prop::sample::select(vec![
        vec![],
        vec![1],
        vec![2],
        vec![3],
        vec![0, 1],
        vec![1, 1],
        vec![2, 1],
        vec![0, 2],
        vec![0, 0, 1],
    ]);
    (s, r).prop_map(|(s, r)| MilnorIndex::new(&s, &r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bockstein_squares_to_zero((p, seed) in prime_and_seed()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 10);
        prop_assert!(bockstein(&bockstein(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cartan_formula_is_consistent((p, seed) in prime_and_seed(), idx in small_index()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 4);
        let g = common::random_element(&mut rng, p, 4);
        let direct = st_apply(&idx, &(&f * &g)).unwrap();
        prop_assert_eq!(direct, cartan_product(&idx, &f, &g).unwrap());
    }

    #[test]
    fn action_commutes_with_gl2((p, seed) in prime_and_seed(), idx in small_index()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 5);
        let m = common::random_gl2(&mut rng, p);
        let before = st_apply(&idx, &f.substitute(&m).unwrap()).unwrap();
        let after = st_apply(&idx, &f).unwrap().substitute(&m).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn action_adds_operation_degree((p, seed) in prime_and_seed(), idx in small_index()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 6);
        let image = st_apply(&idx, &f).unwrap();
        if !image.is_zero() {
            let (_, d) = f.bidegree().unwrap();
            let (_, di) = image.bidegree().unwrap();
            prop_assert_eq!(di, d + idx.degree(p).unwrap());
        }
    }

    #[test]
    fn action_is_linear((p, seed) in prime_and_seed(), idx in small_index()) {
        let mut rng = common::rng(seed);
        let f = common::random_element(&mut rng, p, 5);
        let g = common::random_element(&mut rng, p, 5);
        let sum = st_apply(&idx, &(&f + &g)).unwrap();
        prop_assert_eq!(sum, &st_apply(&idx, &f).unwrap() + &st_apply(&idx, &g).unwrap());
    }

    #[test]
    fn unstable_range_vanishes((p, seed) in prime_and_seed(), i in 1u64..6) {
        // P^i on a polynomial of y-degree below i is zero
        let mut rng = common::rng(seed);
        let f = common::random_homogeneous(&mut rng, p, 0, i - 1, 4);
        prop_assert!(st_apply(&MilnorIndex::power(i), &f).unwrap().is_zero());
    }
}

#[test]
fn top_power_is_pth_power() {
    let mut rng = common::rng(7);
    for q in [3, 5, 7] {
        let p = common::prime(q);
        for half in 1..5 {
            let f = common::random_homogeneous(&mut rng, p, 0, half, 3);
            assert_eq!(
                st_apply(&MilnorIndex::power(half), &f).unwrap(),
                f.pow(q).unwrap()
            );
        }
    }
}

#[test]
fn bockstein_on_generators() {
    let p = common::prime(5);
    assert_eq!(
        bockstein(&SuperPoly::x(p, 2, 1)).unwrap(),
        SuperPoly::y(p, 2, 1)
    );
    assert!(bockstein(&SuperPoly::y(p, 2, 2)).unwrap().is_zero());
}
