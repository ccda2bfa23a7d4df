//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semifrac::{classify, BaseElement, Expr, Instance, LegalityClass, Polynomial, Scalar, Word};

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

const CONSTS: [(u64, u64); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (5, 1)];

fn rand_word(rng: &mut ChaCha8Rng, n: usize) -> Word {
    let len = rng.gen_range(1..=2);
    let mut w = Word::unit();
    for _ in 0..len {
        w = w.concat(&Word::letter(rng.gen_range(1..=n as u16)), false);
    }
    w
}

/// Zero with probability `p_zero`, else a polynomial with positive constant.
pub fn rand_atom(rng: &mut ChaCha8Rng, inst: Instance, p_zero: f64) -> BaseElement {
    if rng.gen_bool(p_zero) {
        return inst.zero();
    }
    let (a, b) = CONSTS[rng.gen_range(0..CONSTS.len())];
    let mut terms = vec![(Word::unit(), Scalar::new(a, b).unwrap())];
    if inst.n_vars() > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            terms.push((
                rand_word(rng, inst.n_vars()),
                Scalar::from_int(rng.gen_range(1..=2)),
            ));
        }
    }
    inst.element(Polynomial::from_terms(terms)).unwrap()
}

pub fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let (a, b) = CONSTS[rng.gen_range(0..CONSTS.len())];
    Scalar::new(a, b).unwrap()
}

/// Random expression of depth at most `depth`.
pub fn rand_expr(rng: &mut ChaCha8Rng, inst: Instance, depth: usize, inverse_free: bool) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return Expr::atom(rand_atom(rng, inst, 0.15));
    }
    let ops = if inverse_free { 3 } else { 4 };
    match rng.gen_range(0..ops) {
        0 => Expr::add(
            rand_expr(rng, inst, depth - 1, inverse_free),
            rand_expr(rng, inst, depth - 1, inverse_free),
        ),
        1 => Expr::mul(
            rand_expr(rng, inst, depth - 1, inverse_free),
            rand_expr(rng, inst, depth - 1, inverse_free),
        ),
        2 => {
            let r = if rng.gen_bool(0.1) {
                Scalar::zero()
            } else {
                rand_scalar(rng)
            };
            Expr::scale(r, rand_expr(rng, inst, depth - 1, inverse_free))
        }
        _ => Expr::inv(rand_expr(rng, inst, depth - 1, inverse_free)),
    }
}

pub fn rand_with_class(
    rng: &mut ChaCha8Rng,
    inst: Instance,
    depth: usize,
    ok: impl Fn(LegalityClass) -> bool,
) -> Expr {
    loop {
        let e = rand_expr(rng, inst, depth, false);
        if ok(classify(&e)) {
            return e;
        }
    }
}

pub fn rand_legal(rng: &mut ChaCha8Rng, inst: Instance, depth: usize) -> Expr {
    rand_with_class(rng, inst, depth, LegalityClass::is_legal)
}

pub fn rand_nonnull(rng: &mut ChaCha8Rng, inst: Instance, depth: usize) -> Expr {
    rand_with_class(rng, inst, depth, |c| c == LegalityClass::NonNullLegal)
}

// proptest strategies

pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (0u64..6, 1u64..4).prop_map(|(a, b)| Scalar::new(a, b).unwrap())
}

pub fn arb_pos_scalar() -> impl Strategy<Value = Scalar> {
    (1u64..6, 1u64..4).prop_map(|(a, b)| Scalar::new(a, b).unwrap())
}

/// Atoms over polync:1 (or any one-variable instance), zero included.
pub fn arb_atom(inst: Instance) -> impl Strategy<Value = BaseElement> {
    let n = inst.n_vars() as u16;
    prop_oneof![
        1 => Just(inst.zero()),
        6 => (arb_pos_scalar(), prop::collection::vec((1u16..=n.max(1), 1usize..3, 1u64..3), 0..3))
            .prop_map(move |(c, ts)| {
                let mut terms = vec![(Word::unit(), c)];
                if n > 0 {
                    for (l, len, k) in ts {
                        let mut w = Word::unit();
                        for _ in 0..len {
                            w = w.concat(&Word::letter(l), false);
                        }
                        terms.push((w, Scalar::from_int(k)));
                    }
                }
                inst.element(Polynomial::from_terms(terms)).unwrap()
            }),
    ]
}

pub fn arb_expr(inst: Instance, depth: u32, inverse_free: bool) -> BoxedStrategy<Expr> {
    let leaf = arb_atom(inst).prop_map(Expr::atom).boxed();
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let base = prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (arb_scalar(), inner.clone()).prop_map(|(r, a)| Expr::scale(r, a)),
        ];
        if inverse_free {
            base.boxed()
        } else {
            prop_oneof![3 => base, 1 => inner.prop_map(Expr::inv)].boxed()
        }
    })
    .boxed()
}

pub fn arb_legal(inst: Instance, depth: u32) -> impl Strategy<Value = Expr> {
    arb_expr(inst, depth, false).prop_filter("legal", |e| classify(e).is_legal())
}

pub fn arb_nonnull(inst: Instance, depth: u32) -> impl Strategy<Value = Expr> {
    arb_expr(inst, depth, false)
        .prop_filter("nonnull", |e| classify(e) == LegalityClass::NonNullLegal)
}
