//! Invariants of `GL(2, F_p)` and their normal forms.

mod common;

use proptest::prelude::*;
use steenrod_dickson::dickson::{
    gl2_elements, gl2_generating_set, is_invariant_under, DMExpr, DicksonAlgebra, DmKey, Generator,
    MuiPart,
};
use steenrod_dickson::steenrod::{st_apply, MilnorIndex};
use steenrod_dickson::Prime;

fn algebra(p: u64) -> DicksonAlgebra {
    DicksonAlgebra::new(common::prime(p)).unwrap()
}

/// A random normal form of fixed degree built from the candidate basis.
fn random_expr(alg: &DicksonAlgebra, seed: u64) -> DMExpr {
    use rand::Rng;
    let mut rng = common::rng(seed);
    let p = alg.prime();
    let ext = rng.gen_range(0..3u32);
    let mui = [MuiPart::One, MuiPart::R0, MuiPart::R01][ext as usize];
    let key = DmKey::new(mui, rng.gen_range(0..3), rng.gen_range(0..3));
    let degree = key.degree(p).unwrap();
    let mut e = DMExpr::zero(p);
    for k in alg.candidates(ext, degree) {
        e.add_term(k, p.scalar(rng.gen_range(0..p.get() as i64)));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_round_trips(p in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        let alg = algebra(p);
        let e = random_expr(&alg, seed);
        let f = alg.evaluate(&e).unwrap();
        prop_assert_eq!(alg.decompose(&f).unwrap(), e);
    }

    #[test]
    fn l2_is_twisted_by_determinant(p in prop::sample::select(vec![3u64, 5, 7]), seed in any::<u64>()) {
        let alg = algebra(p);
        let m = common::random_gl2(&mut common::rng(seed), alg.prime());
        let l2 = alg.gen(Generator::L2);
        prop_assert_eq!(l2.substitute(&m).unwrap(), l2.scale(m.det()));
    }
}

#[test]
fn relations_between_generators() {
    for q in [3, 5, 7] {
        let alg = algebra(q);
        let g = |x| alg.gen(x).clone();
        assert_eq!(g(Generator::Q0), g(Generator::L2).pow(q - 1).unwrap());
        assert_eq!(
            &g(Generator::R0) * &g(Generator::R1),
            (&g(Generator::R01) * &g(Generator::Q0)).scale(alg.prime().sign(1))
        );
        assert!((&g(Generator::R0) * &g(Generator::R0)).is_zero());
        assert!((&g(Generator::R1) * &g(Generator::R1)).is_zero());
    }
}

#[test]
fn operations_preserve_invariants() {
    for q in [3, 5] {
        let alg = algebra(q);
        let p: Prime = alg.prime();
        let group = if q == 3 {
            gl2_elements(p)
        } else {
            gl2_generating_set(p)
        };
        for target in Generator::INVARIANT {
            let f = alg.gen(target);
            assert!(is_invariant_under(f, &group).unwrap(), "{target}");
            for s in [None, Some(0), Some(1), Some(2)] {
                for i in 0..=q + 1 {
                    let idx = match s {
                        None => MilnorIndex::power(i),
                        Some(s) => MilnorIndex::new(&[s], &[i]).unwrap(),
                    };
                    let image = st_apply(&idx, f).unwrap();
                    assert!(
                        is_invariant_under(&image, &group).unwrap(),
                        "{idx} on {target}"
                    );
                    alg.decompose(&image).unwrap();
                }
            }
        }
    }
}
