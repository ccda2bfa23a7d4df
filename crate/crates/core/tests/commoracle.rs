mod common;

use common::*;
use proptest::prelude::*;
use semifrac::commoracle::*;
use semifrac::{eq, eval_fraction, sample_homs, Budget, EqVerdict, Fraction, Instance};

#[test]
fn noncommutative_rejected() {
    let f = Fraction::parse("{1 + x1}", Instance::PolyNc(2)).unwrap();
    assert!(g_fraction(&f).is_err());
}

#[test]
fn polync1_is_commutative() {
    let f = Fraction::parse("{1 + x1} * ({2 + x1})^-1", Instance::PolyNc(1)).unwrap();
    assert!(g_fraction(&f).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // G preserves values and H(G(a)) = a
    #[test]
    fn g_and_h(x in arb_legal(Instance::PolyComm(2), 3)) {
        let a = Fraction::new(x).unwrap();
        let g = g_fraction(&a).unwrap();
        for h in sample_homs(Instance::PolyComm(2), 8, 4) {
            prop_assert_eq!(g.eval(&h).unwrap(), eval_fraction(&h, &a).unwrap());
        }
        let back = h_map(&g).unwrap();
        prop_assert!(eq(&back, &a, &Budget::default()).unwrap().is_equal());
        prop_assert!(cf_eq(&g_fraction(&back).unwrap(), &g).unwrap());
    }

    // eq without the oracle never contradicts cross-multiplication
    #[test]
    fn eq_agrees(x in arb_legal(Instance::PolyComm(1), 2), y in arb_legal(Instance::PolyComm(1), 2)) {
        let (a, b) = (Fraction::new(x).unwrap(), Fraction::new(y).unwrap());
        let cf = cf_eq(&g_fraction(&a).unwrap(), &g_fraction(&b).unwrap()).unwrap();
        let bud = Budget { commutative_oracle: false, rewrites: 1500, ..Budget::default() };
        match eq(&a, &b, &bud).unwrap() {
            EqVerdict::Equal(_) => prop_assert!(cf),
            EqVerdict::NotEqual(_) => prop_assert!(!cf),
            EqVerdict::Unknown => {}
        }
    }

    #[test]
    fn cf_leq_sound(x in arb_legal(Instance::PolyComm(1), 2), y in arb_legal(Instance::PolyComm(1), 2)) {
        let (a, b) = (g_fraction(&Fraction::new(x).unwrap()).unwrap(), g_fraction(&Fraction::new(y).unwrap()).unwrap());
        if let CfLeq::Holds(_) = cf_leq(&a, &b, 4, 16, 1).unwrap() {
            for h in sample_homs(Instance::PolyComm(1), 16, 2) {
                prop_assert!(a.eval(&h).unwrap() <= b.eval(&h).unwrap());
            }
        }
    }
}
