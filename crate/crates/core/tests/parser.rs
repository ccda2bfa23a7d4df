mod common;

use common::*;
use proptest::prelude::*;
use semifrac::{parse, Instance};

fn count_ops(text: &str) -> usize {
    let mut depth = 0;
    let mut n = 0;
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'{' => depth += 1,
            b'}' => depth -= 1,
            b'+' | b'*' | b'.' if depth == 0 => n += 1,
            b'^' if depth == 0 => {
                n += 1;
                i += 2;
            }
            _ => {}
        }
        i += 1;
    }
    n
}

#[test]
fn rendering_samples() {
    let nc = Instance::PolyNc(1);
    assert_eq!(parse("({2})^-1", nc).unwrap().render(), "({2})^-1");
    assert_eq!(parse("{1} + {1}", nc).unwrap().render(), "({1} + {1})");
    assert_eq!(
        parse("2/3 . {1 + x1}", nc).unwrap().render(),
        "(2/3 . {1 + x1})"
    );
    // precedence: scaling binds tighter than *, which binds tighter than +
    let e = parse("{1} + 2 . {2} * {3}", nc).unwrap();
    assert_eq!(e.render(), "({1} + ((2 . {2}) * {3}))");
    assert_eq!(parse("{2}^-1^-1", nc).unwrap().render(), "(({2})^-1)^-1");
}

#[test]
fn syntax_errors_have_positions() {
    let nc = Instance::PolyNc(1);
    for bad in [
        "", "{1", "{1} +", "({1}", "{1} {2}", "{x1}", "{1 + x3}", "-1 . {1}",
    ] {
        assert!(parse(bad, nc).is_err(), "{bad:?} should fail");
    }
    assert!(parse("{1 + x1}", Instance::QPlus).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_parse_round_trip(e in arb_expr(Instance::PolyNc(2), 4, false)) {
        let back = parse(&e.render(), Instance::PolyNc(2)).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.render(), e.render());
    }

    #[test]
    fn op_count_matches_tokens(e in arb_expr(Instance::PolyNc(1), 4, false)) {
        prop_assert_eq!(e.op_count(), count_ops(&e.render()));
    }

    #[test]
    fn commutative_round_trip(e in arb_expr(Instance::PolyComm(1), 3, false)) {
        prop_assert_eq!(parse(&e.render(), Instance::PolyComm(1)).unwrap(), e);
    }
}
