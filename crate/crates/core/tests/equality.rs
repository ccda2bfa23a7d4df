mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semifrac::fraction::replay;
use semifrac::{eq, eval_fraction, Budget, EqEvidence, EqVerdict, Fraction, Instance, MonotoneHom};

fn check_sound(a: &Fraction, b: &Fraction, v: &EqVerdict) {
    match v {
        EqVerdict::Equal(EqEvidence::Rewrites(t)) => {
            assert_eq!(replay(a.rep(), t).unwrap(), *b.rep())
        }
        EqVerdict::Equal(EqEvidence::CrossMultiplication { lhs, rhs }) => {
            assert!(semifrac::commoracle::cf_eq(lhs, rhs).unwrap())
        }
        EqVerdict::NotEqual(h) => {
            assert_ne!(eval_fraction(h, a).unwrap(), eval_fraction(h, b).unwrap())
        }
        EqVerdict::Unknown => {}
    }
}

#[test]
fn qplus_matches_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let id = MonotoneHom::identity();
    let b = Budget::default();
    for _ in 0..60 {
        let x = Fraction::new(rand_legal(&mut rng, Instance::QPlus, 3)).unwrap();
        let y = Fraction::new(rand_legal(&mut rng, Instance::QPlus, 3)).unwrap();
        let same = eval_fraction(&id, &x).unwrap() == eval_fraction(&id, &y).unwrap();
        let v = eq(&x, &y, &b).unwrap();
        assert_eq!(v.is_equal(), same, "{} vs {}", x.rep(), y.rep());
        assert_eq!(v.is_not_equal(), !same);
        check_sound(&x, &y, &v);
    }
}

#[test]
fn noncommutative_products_stay_apart_or_unknown() {
    let nc = Instance::PolyNc(2);
    let a = Fraction::parse("{1 + x1 x2}", nc).unwrap();
    let b = Fraction::parse("{1 + x2 x1}", nc).unwrap();
    // hom values agree, so the answer is never NotEqual from sampling, but the
    // normal forms are distinct atoms: no equality may be claimed
    assert!(!eq(&a, &b, &Budget::default()).unwrap().is_equal());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_are_sound(x in arb_legal(Instance::PolyNc(1), 3), y in arb_legal(Instance::PolyNc(1), 3)) {
        let (a, b) = (Fraction::new(x).unwrap(), Fraction::new(y).unwrap());
        let bud = Budget { rewrites: 2000, ..Budget::default() };
        let v = eq(&a, &b, &bud).unwrap();
        check_sound(&a, &b, &v);
        prop_assert!(eq(&a, &a.clone(), &bud).unwrap().is_equal());
    }

    // a and a rearranged by ring laws are found equal
    #[test]
    fn rearranged_sums_equal(x in arb_legal(Instance::PolyNc(1), 2), y in arb_legal(Instance::PolyNc(1), 2), z in arb_legal(Instance::PolyNc(1), 2)) {
        let l = Fraction::new(semifrac::Expr::add(semifrac::Expr::add(x.clone(), y.clone()), z.clone())).unwrap();
        let r = Fraction::new(semifrac::Expr::add(z, semifrac::Expr::add(y, x))).unwrap();
        let v = eq(&l, &r, &Budget::default()).unwrap();
        prop_assert!(v.is_equal());
        check_sound(&l, &r, &v);
    }
}
