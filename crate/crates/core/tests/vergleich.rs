mod common;

use common::*;
use proptest::prelude::*;
use semifrac::vergleich::*;
use semifrac::{BaseElement, Budget, Instance, Scalar};

fn el(s: &str) -> BaseElement {
    Instance::PolyNc(1).parse_element(s, 0).unwrap()
}

#[test]
fn b_examples() {
    let x = el("2 + x1 x1");
    let y = el("1 + 2x1");
    // x1 coefficient of the left side is sum_{j<=m} j/2
    for (m, ok) in [(2, false), (3, true)] {
        assert_eq!(verify_condition_b(&x, &y, &q("1/2"), m).unwrap(), ok);
    }
    let one = el("1");
    let two = el("2");
    // constant row 1 + sum (1/4)^{j+1} 2^j = 1 + 1/2 (1 - 2^-(m+1)) never reaches 2
    assert!(search_condition_b(&one, &two, &q("1/4"), 10)
        .unwrap()
        .is_none());
    // at eps = 1/2 the row grows by 1/2 per step: m = 1
    assert_eq!(
        search_condition_b(&one, &two, &q("1/2"), 10)
            .unwrap()
            .unwrap()
            .m,
        1
    );
}

#[test]
fn a_examples() {
    let x = el("2 + x1 x1");
    assert!(check_condition_a(&x, &x, 50, 1).unwrap().passed());
    assert!(check_condition_a(&x, &el("1 + 2x1"), 1000, 1)
        .unwrap()
        .passed());
    assert!(!check_condition_a(&el("1"), &el("2"), 5, 1)
        .unwrap()
        .passed());
    assert!(check_condition_a(&el("0"), &x, 5, 1).is_err());
}

#[test]
fn c_worked_and_budget() {
    let x = el("2 + x1 x1");
    let y = el("1 + 2x1");
    let b = Budget::default();
    let c = search_condition_c(&x, &y, &q("2"), &q("1"), &b)
        .unwrap()
        .unwrap();
    assert!(c.p.eval(&q("2")) <= q("1"));
    assert!(verify_condition_c(&x, &y, &q("2"), &q("1"), &c.p).unwrap());
    // the (b) family at any shrunk epsilon is too small here
    let e = shrink_epsilon(&q("2"), &q("1"), b.m_max).unwrap().unwrap();
    assert_eq!(e, q("1/4"));
    assert!(search_condition_b(&x, &y, &e, b.m_max).unwrap().is_none());
    // y out of reach: x = 1, y = 1 + x1 x1 x1 with tiny eps and tight budget
    let tight = Budget {
        m_max: 2,
        ..Budget::default()
    };
    assert!(
        search_condition_c(&el("1"), &el("1 + x1 x1 x1"), &q("3"), &q("1/100"), &tight)
            .unwrap()
            .is_none()
    );
}

#[test]
fn d_examples() {
    let x = el("2 + x1 x1");
    let (k, p) = construct_condition_d(&x, &"1/8X".parse().unwrap()).unwrap();
    assert_eq!(k, 0);
    assert_eq!(p.to_string(), "1 + 1/8X");
    let p: UniPoly = "1 + 1/8X".parse().unwrap();
    assert_eq!(p.eval(&q("2")), q("5/4"));
    assert!(check_condition_d(
        &x,
        &x,
        &UniPoly::constant(Scalar::one()),
        &q("9"),
        &q("1/9")
    )
    .unwrap());
    // x below 1 needs a shift
    let small = el("1/4 + x1");
    let d = derive_condition_d(&small, &el("1 + x1"), &q("1"), &q("1"), &Budget::default())
        .unwrap()
        .unwrap();
    assert!(d.k > 0);
    assert!(check_condition_d(&small, &el("1 + x1"), &d.p, &q("1"), &q("1")).unwrap());
}

fn arb_el() -> impl Strategy<Value = BaseElement> {
    arb_atom(Instance::PolyNc(1)).prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unipoly_round_trip(cs in prop::collection::vec(arb_scalar(), 0..6)) {
        let p = UniPoly::new(cs);
        prop_assert_eq!(p.to_string().parse::<UniPoly>().unwrap(), p);
    }

    // evidence from each search replays through its verifier
    #[test]
    fn searches_replay(x in arb_el(), y in arb_el(), e in arb_pos_scalar(), r in arb_scalar()) {
        let b = Budget::default();
        if let Some(res) = search_condition_b(&x, &y, &e, b.m_max).unwrap() {
            prop_assert!(verify_condition_b(&x, &y, &e, res.m).unwrap());
            if res.m > 0 {
                prop_assert!(!verify_condition_b(&x, &y, &e, res.m - 1).unwrap());
            }
        }
        if let Some(c) = search_condition_c(&x, &y, &r, &e, &b).unwrap() {
            prop_assert!(verify_condition_c(&x, &y, &r, &e, &c.p).unwrap());
        }
        if let Some(d) = derive_condition_d(&x, &y, &r, &e, &b).unwrap() {
            prop_assert!(check_condition_d(&x, &y, &d.p, &r, &e).unwrap());
        }
    }

    // (b) over a halving schedule forces (a) on the sample family
    #[test]
    fn schedule_b_implies_a(x in arb_el(), y in arb_el()) {
        if search_condition_b_schedule(&x, &y, &q("1"), 24, 32).unwrap().is_some() {
            prop_assert!(check_condition_a(&x, &y, 64, 5).unwrap().passed());
        }
    }
}
