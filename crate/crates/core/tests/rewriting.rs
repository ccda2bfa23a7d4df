mod common;

use common::*;
use proptest::prelude::*;
use semifrac::fraction::{
    applicable_steps, normalize_traced, replay, reverse_trace, RewriteStep, Rule,
};
use semifrac::{eval_expr, normalize, parse, sample_homs, Instance};

#[test]
fn every_rule_has_a_family() {
    for r in semifrac::fraction::rules::ALL_RULES.iter() {
        assert!((1..=6).contains(&r.family()));
        assert_eq!(r.name().parse::<Rule>().unwrap(), *r);
    }
}

#[test]
fn side_conditions_enforced() {
    let nc = Instance::PolyNc(1);
    // (a * b)^-1 -> b^-1 * a^-1 needs both factors nonnull
    let from = parse("(({0} * {1}))^-1", nc).unwrap();
    let to = parse("({1})^-1 * ({0})^-1", nc).unwrap();
    match RewriteStep::new(Rule::InvProduct, vec![], from.clone(), to) {
        Err(_) => {}
        Ok(step) => assert!(step.apply(&from).is_err()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // every single step keeps the value under every sampled hom
    #[test]
    fn steps_preserve_values(e in arb_legal(Instance::PolyNc(1), 3)) {
        let homs = sample_homs(Instance::PolyNc(1), 8, 11);
        for step in applicable_steps(&e, true) {
            let next = step.apply(&e).unwrap();
            for h in &homs {
                prop_assert_eq!(eval_expr(h, &e).unwrap(), eval_expr(h, &next).unwrap(), "{}", step);
            }
            // and can be undone
            prop_assert_eq!(step.inverse().apply(&next).unwrap(), e.clone());
            let rec = RewriteStep::from_record(&step.record(), Instance::PolyNc(1)).unwrap();
            prop_assert_eq!(rec, step);
        }
    }

    #[test]
    fn normal_form_trace_replays(e in arb_legal(Instance::PolyNc(1), 4)) {
        let (nf, trace) = normalize_traced(&e).unwrap();
        prop_assert_eq!(&replay(&e, &trace).unwrap(), &nf);
        prop_assert_eq!(&replay(&nf, &reverse_trace(&trace)).unwrap(), &e);
        prop_assert_eq!(normalize(&nf).unwrap(), nf.clone());
        for h in sample_homs(Instance::PolyNc(1), 6, 5) {
            prop_assert_eq!(eval_expr(&h, &e).unwrap(), eval_expr(&h, &nf).unwrap());
        }
    }

    #[test]
    fn normal_form_commutative(e in arb_legal(Instance::PolyComm(2), 3)) {
        let (nf, trace) = normalize_traced(&e).unwrap();
        prop_assert_eq!(replay(&e, &trace).unwrap(), nf);
    }
}
