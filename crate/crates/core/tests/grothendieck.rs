mod common;

use common::*;
use proptest::prelude::*;
use semifrac::grothendieck::*;
use semifrac::{Budget, Fraction, Instance};

fn arb_signed() -> impl Strategy<Value = SignedScalar> {
    (any::<bool>(), arb_scalar()).prop_map(|(neg, m)| {
        if neg {
            SignedScalar::minus(m)
        } else {
            SignedScalar::plus(m)
        }
    })
}

fn arb_diff() -> impl Strategy<Value = FormalDifference> {
    (
        arb_legal(Instance::PolyNc(1), 2),
        arb_legal(Instance::PolyNc(1), 2),
    )
        .prop_map(|(a, b)| {
            FormalDifference::new(Fraction::new(a).unwrap(), Fraction::new(b).unwrap()).unwrap()
        })
}

fn zero() -> Fraction {
    Fraction::zero(Instance::PolyNc(1))
}

#[test]
fn spec_examples() {
    let b = Budget::default();
    let f = |s| Fraction::parse(s, Instance::PolyNc(1)).unwrap();
    let d = FormalDifference::new(f("{1+x1}"), f("{2}")).unwrap();
    assert!(diff_eq(&d, &d, &zero(), &b).unwrap());
    let c = f("({3 + x1})^-1");
    let dc =
        FormalDifference::new(f("{1+x1}").add(&c).unwrap(), f("{2}").add(&c).unwrap()).unwrap();
    assert!(diff_eq(&dc, &d, &zero(), &b).unwrap());
    let neg = diff_combine(DiffOp::Scale(&SignedScalar::minus(q("1"))), &d).unwrap();
    assert_eq!((neg.pos.rep(), neg.neg.rep()), (d.neg.rep(), d.pos.rep()));
    let six = d
        .scale(&SignedScalar::plus(q("2")))
        .scale(&SignedScalar::plus(q("3")));
    assert!(diff_eq(&six, &d.scale(&SignedScalar::plus(q("6"))), &zero(), &b).unwrap());
    // different values at a point: no witness helps
    let other = FormalDifference::new(f("{2}"), f("{1+x1}")).unwrap();
    for w in ["{0}", "{1}", "({1+x1})^-1"] {
        assert!(!diff_eq(&d, &other, &f(w), &b).unwrap());
    }
    assert!(triangle_leq(&d, &d, &zero(), &b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn scaling_identities(d in arb_diff(), e in arb_diff(), r in arb_signed(), s in arb_signed()) {
        let b = Budget::default();
        let z = zero();
        // (r+s)d = rd + sd
        prop_assert!(diff_eq(&d.scale(&r.add(&s)), &d.scale(&r).add(&d.scale(&s)).unwrap(), &z, &b).unwrap());
        // (rs)d = r(sd)
        prop_assert!(diff_eq(&d.scale(&r.mul(&s)), &d.scale(&s).scale(&r), &z, &b).unwrap());
        // r(d+e) = rd + re
        prop_assert!(diff_eq(&d.add(&e).unwrap().scale(&r), &d.scale(&r).add(&e.scale(&r)).unwrap(), &z, &b).unwrap());
        // 1d = d, d + (-1)d = 0
        prop_assert!(diff_eq(&d.scale(&SignedScalar::plus(q("1"))), &d, &z, &b).unwrap());
        let zd = FormalDifference::from_fraction(z.clone());
        prop_assert!(diff_eq(&d.add(&d.scale(&SignedScalar::minus(q("1")))).unwrap(), &zd, &z, &b).unwrap());
    }

    #[test]
    fn triangle_compatible(d in arb_diff(), g in arb_diff()) {
        let b = Budget::default();
        let z = zero();
        // d <| d + (x - 0) for x >= 0
        let bigger = d.add(&FormalDifference::from_fraction(Fraction::parse("{1+x1}", Instance::PolyNc(1)).unwrap())).unwrap();
        if triangle_leq(&d, &bigger, &z, &b).unwrap() {
            prop_assert!(triangle_leq(&d.add(&g).unwrap(), &bigger.add(&g).unwrap(), &z, &b).unwrap());
        }
    }
}
