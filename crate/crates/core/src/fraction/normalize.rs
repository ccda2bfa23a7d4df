//! Oriented rewriting to a normal form, recording every step.
//!
//! The normal form is reached innermost-first. Each local change is a short
//! macro of rule applications so that the recorded trace replays step by
//! step. Shape of a normal form (for a non-null term with inverses):
//!
//! * sums are right-nested, zero-free, with at most one atom (first) and the
//!   other terms sorted by the rendering of their monomial, like terms merged;
//! * a term is `r . P` (r != 1) or `P`, where `P` is a right-nested product
//!   of atoms and inverses with no units, no adjacent atoms, no cancelling
//!   neighbours, and monic atoms whenever an inverse is present;
//! * inverses sit only on monic atoms and on sums;
//! * every inverse-free subterm is a single atom.

use crate::error::{Error, Result};
use crate::expr::{Expr, Path};
use crate::fraction::rules::{RewriteStep, Rule};
use crate::legality::{classify, eval_in_s, LegalityClass};

/// Upper bound on rewrite steps for one normalization; generous for the
/// term sizes this crate targets.
const STEP_LIMIT: usize = 200_000;

pub fn normalize(e: &Expr) -> Result<Expr> {
    normalize_traced(e).map(|(nf, _)| nf)
}

/// Normal form together with a trace that replays from `e` to it.
pub fn normalize_traced(e: &Expr) -> Result<(Expr, Vec<RewriteStep>)> {
    if !classify(e).is_legal() {
        return Err(Error::Illegal(e.render()));
    }
    e.check_instance()?;
    let mut cur = e.clone();
    let mut trace = Vec::new();
    loop {
        if trace.len() > STEP_LIMIT {
            return Err(Error::Verification(format!(
                "normalization exceeded {STEP_LIMIT} steps on {e}"
            )));
        }
        let found = find_redex(&cur, &mut Vec::new(), false)
            .or_else(|| find_redex(&cur, &mut Vec::new(), true));
        let Some((at, mac)) = found else { break };
        for (rule, rel, from, to) in mac.steps {
            let mut path = at.clone();
            path.extend(rel);
            let step = RewriteStep::new(rule, path, from, to)?;
            cur = step.apply(&cur)?;
            trace.push(step);
        }
    }
    Ok((cur, trace))
}

/// First node in post-order with a local rewrite. With `distribute` only
/// distribution is considered.
fn find_redex(e: &Expr, path: &mut Path, distribute: bool) -> Option<(Path, Mac)> {
    for (i, c) in e.children().into_iter().enumerate() {
        path.push(i as u8);
        let hit = find_redex(c, path, distribute);
        path.pop();
        if hit.is_some() {
            return hit;
        }
    }
    let mac = if distribute {
        distribute_macro(e)
    } else {
        node_macro(e)
    };
    mac.map(|m| (path.clone(), m))
}

/// A sequence of local steps starting from one node.
struct Mac {
    cur: Expr,
    steps: Vec<(Rule, Path, Expr, Expr)>,
}

impl Mac {
    fn new(e: &Expr) -> Mac {
        Mac {
            cur: e.clone(),
            steps: Vec::new(),
        }
    }

    fn at(&self, p: &[u8]) -> &Expr {
        self.cur.at(p).expect("macro path")
    }

    fn step(&mut self, rule: Rule, p: &[u8], to: Expr) -> &mut Mac {
        let from = self.at(p).clone();
        self.cur = self.cur.replaced(p, to.clone()).expect("macro path");
        self.steps.push((rule, p.to_vec(), from, to));
        self
    }

    /// Replace the inverse-free subterm at `p` by an equal-valued one.
    fn eval_to(&mut self, p: &[u8], to: Expr) -> &mut Mac {
        self.step(Rule::Evaluate, p, to)
    }

    fn done(self) -> Option<Mac> {
        Some(self)
    }
}

fn kids(e: &Expr) -> (&Expr, &Expr) {
    match e {
        Expr::Add(a, b) | Expr::Mul(a, b) => (a, b),
        _ => unreachable!("binary node expected"),
    }
}

fn unary(e: &Expr) -> &Expr {
    match e {
        Expr::Scale(_, a) | Expr::Inv(a) => a,
        _ => unreachable!("unary node expected"),
    }
}

fn node_macro(e: &Expr) -> Option<Mac> {
    if e.is_atom() {
        return None;
    }
    let inst = e.instance();
    match classify(e) {
        LegalityClass::Illegal => return None,
        LegalityClass::Null => {
            let mut m = Mac::new(e);
            m.step(Rule::NullToZero, &[], Expr::zero(inst));
            return m.done();
        }
        LegalityClass::NonNullLegal => {}
    }
    if e.is_inverse_free() {
        let v = eval_in_s(e).ok()?;
        let mut m = Mac::new(e);
        m.eval_to(&[], Expr::atom(v));
        return m.done();
    }
    match e {
        Expr::Add(..) => add_macro(e),
        Expr::Mul(..) => mul_macro(e),
        Expr::Scale(..) => scale_macro(e),
        Expr::Inv(..) => inv_macro(e),
        Expr::Atom(_) => None,
    }
}

// ---- sums ----

/// The monomial part of a summand.
fn mono(t: &Expr) -> &Expr {
    match t {
        Expr::Scale(_, p) => p,
        p => p,
    }
}

fn sort_key(t: &Expr) -> (u8, String) {
    if t.is_atom() {
        (0, String::new())
    } else {
        (1, mono(t).render())
    }
}

fn head_add(e: &Expr) -> &Expr {
    match e {
        Expr::Add(a, _) => a,
        other => other,
    }
}

/// Merge `T1 + T2` with equal monomials at `p` into one scaled term.
fn merge_like(m: &mut Mac, p: &[u8]) {
    for side in [0u8, 1] {
        let mut q = p.to_vec();
        q.push(side);
        let t = m.at(&q).clone();
        if !matches!(t, Expr::Scale(..)) {
            m.step(
                Rule::ScaleOne,
                &q,
                Expr::scale(crate::base::Scalar::one(), t),
            );
        }
    }
    let (r, t, body) = match m.at(p) {
        Expr::Add(a, b) => match (&**a, &**b) {
            (Expr::Scale(r, x), Expr::Scale(t, _)) => (r.clone(), t.clone(), (**x).clone()),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    };
    m.step(Rule::ScalarSum, p, Expr::scale(&r + &t, body));
}

fn add_macro(e: &Expr) -> Option<Mac> {
    let (l, r) = kids(e);
    let mut m = Mac::new(e);
    if l.is_zero_atom() {
        m.step(Rule::AddZeroLeft, &[], r.clone());
        return m.done();
    }
    if r.is_zero_atom() {
        m.step(Rule::AddZeroRight, &[], l.clone());
        return m.done();
    }
    if let Expr::Add(a, b) = l {
        let to = Expr::add((**a).clone(), Expr::add((**b).clone(), r.clone()));
        m.step(Rule::AddAssoc, &[], to);
        return m.done();
    }
    let rh = head_add(r);
    let nested = matches!(r, Expr::Add(..));
    // bring the pair (l, rh) to position `pair` as its own sum
    let regroup = |m: &mut Mac| -> Path {
        if nested {
            let (b, c) = kids(r);
            let to = Expr::add(Expr::add(l.clone(), b.clone()), c.clone());
            m.step(Rule::AddAssoc, &[], to);
            vec![0]
        } else {
            vec![]
        }
    };
    if l.is_atom() && rh.is_atom() {
        let v = eval_in_s(&Expr::add(l.clone(), rh.clone())).ok()?;
        let p = regroup(&mut m);
        m.eval_to(&p, Expr::atom(v));
        return m.done();
    }
    if !l.is_atom() && !rh.is_atom() && mono(l) == mono(rh) {
        let p = regroup(&mut m);
        merge_like(&mut m, &p);
        return m.done();
    }
    if sort_key(l) > sort_key(rh) {
        if nested {
            let (b, c) = kids(r);
            m.step(
                Rule::AddAssoc,
                &[],
                Expr::add(Expr::add(l.clone(), b.clone()), c.clone()),
            );
            m.step(Rule::AddComm, &[0], Expr::add(b.clone(), l.clone()));
            m.step(
                Rule::AddAssoc,
                &[],
                Expr::add(b.clone(), Expr::add(l.clone(), c.clone())),
            );
        } else {
            m.step(Rule::AddComm, &[], Expr::add(r.clone(), l.clone()));
        }
        return m.done();
    }
    None
}

// ---- scalings ----

fn scale_macro(e: &Expr) -> Option<Mac> {
    let Expr::Scale(r, x) = e else { return None };
    let mut m = Mac::new(e);
    if r.is_one() {
        m.step(Rule::ScaleOne, &[], (**x).clone());
        return m.done();
    }
    match &**x {
        Expr::Scale(t, y) => {
            m.step(Rule::ScaleScale, &[], Expr::scale(r * t, (**y).clone()));
            m.done()
        }
        Expr::Add(a, b) => {
            let to = Expr::add(
                Expr::scale(r.clone(), (**a).clone()),
                Expr::scale(r.clone(), (**b).clone()),
            );
            m.step(Rule::ScaleAdd, &[], to);
            m.done()
        }
        _ => None,
    }
}

// ---- inverses ----

fn inv_macro(e: &Expr) -> Option<Mac> {
    let x = unary(e);
    let inst = e.instance();
    let mut m = Mac::new(e);
    match x {
        Expr::Atom(a) if a.is_one() => {
            m.step(Rule::InvOne, &[], Expr::one(inst));
            m.done()
        }
        Expr::Atom(a) => {
            let (c, monic) = a.monic_split()?;
            m.eval_to(&[0], Expr::scale(c.clone(), Expr::atom(monic.clone())));
            let to = Expr::scale(c.recip()?, Expr::inv(Expr::atom(monic)));
            m.step(Rule::InvScale, &[], to);
            m.done()
        }
        Expr::Inv(y) => {
            // (y^-1)^-1 = (y^-1)^-1 * (y^-1 * y) = ((y^-1)^-1 * y^-1) * y = y
            let y = (**y).clone();
            let iy = Expr::inv(y.clone());
            m.step(
                Rule::MulOneRight,
                &[],
                Expr::mul(e.clone(), Expr::one(inst)),
            );
            m.step(Rule::InvMulLeft, &[1], Expr::mul(iy.clone(), y.clone()));
            m.step(
                Rule::MulAssoc,
                &[],
                Expr::mul(Expr::mul(e.clone(), iy), y.clone()),
            );
            m.step(Rule::InvMulLeft, &[0], Expr::one(inst));
            m.step(Rule::MulOneLeft, &[], y);
            m.done()
        }
        Expr::Mul(a, b) => {
            let to = Expr::mul(Expr::inv((**b).clone()), Expr::inv((**a).clone()));
            m.step(Rule::InvProduct, &[], to);
            m.done()
        }
        Expr::Scale(r, y) => {
            let to = Expr::scale(r.recip()?, Expr::inv((**y).clone()));
            m.step(Rule::InvScale, &[], to);
            m.done()
        }
        Expr::Add(..) => None,
    }
}

// ---- products ----

fn atom_of(e: &Expr) -> Option<&crate::base::BaseElement> {
    e.as_atom()
}

fn inv_atom(e: &Expr) -> Option<&crate::base::BaseElement> {
    match e {
        Expr::Inv(a) => a.as_atom(),
        _ => None,
    }
}

/// Local simplification of a product `l * r` of two factors, as a macro
/// rooted at `p`. Returns false if nothing applies.
fn pair_macro(m: &mut Mac, p: &[u8]) -> bool {
    let node = m.at(p).clone();
    let (l, r) = kids(&node);
    let inst = node.instance();
    let at = |rel: &[u8]| -> Path {
        let mut q = p.to_vec();
        q.extend_from_slice(rel);
        q
    };
    // x^-1 * x and x * x^-1
    if let Expr::Inv(x) = l {
        if **x == *r {
            m.step(Rule::InvMulLeft, p, Expr::one(inst));
            return true;
        }
    }
    if let Expr::Inv(x) = r {
        if **x == *l {
            m.step(Rule::InvMulRight, p, Expr::one(inst));
            return true;
        }
    }
    // s^-1 * q
    if let (Some(s), Some(q)) = (inv_atom(l), atom_of(r)) {
        if let Some(t) = q.left_quotient(s) {
            // q = s t
            let (sa, ta) = (Expr::atom(s.clone()), Expr::atom(t));
            m.eval_to(&at(&[1]), Expr::mul(sa.clone(), ta.clone()));
            m.step(
                Rule::MulAssoc,
                p,
                Expr::mul(Expr::mul(l.clone(), sa), ta.clone()),
            );
            m.step(Rule::InvMulLeft, &at(&[0]), Expr::one(inst));
            m.step(Rule::MulOneLeft, p, ta);
            return true;
        }
        if let Some(w) = s.left_quotient(q) {
            // s = q w, so (q w)^-1 q = w^-1
            let (qa, wa) = (Expr::atom(q.clone()), Expr::atom(w));
            m.eval_to(&at(&[0, 0]), Expr::mul(qa.clone(), wa.clone()));
            let iw = Expr::inv(wa);
            let iq = Expr::inv(qa.clone());
            m.step(
                Rule::InvProduct,
                &at(&[0]),
                Expr::mul(iw.clone(), iq.clone()),
            );
            m.step(Rule::MulAssoc, p, Expr::mul(iw.clone(), Expr::mul(iq, qa)));
            m.step(Rule::InvMulLeft, &at(&[1]), Expr::one(inst));
            m.step(Rule::MulOneRight, p, iw);
            return true;
        }
    }
    // q * s^-1
    if let (Some(q), Some(s)) = (atom_of(l), inv_atom(r)) {
        if let Some(t) = q.right_quotient(s) {
            // q = t s
            let (sa, ta) = (Expr::atom(s.clone()), Expr::atom(t));
            m.eval_to(&at(&[0]), Expr::mul(ta.clone(), sa.clone()));
            m.step(
                Rule::MulAssoc,
                p,
                Expr::mul(ta.clone(), Expr::mul(sa, r.clone())),
            );
            m.step(Rule::InvMulRight, &at(&[1]), Expr::one(inst));
            m.step(Rule::MulOneRight, p, ta);
            return true;
        }
        if let Some(w) = s.right_quotient(q) {
            // s = w q, so q (w q)^-1 = w^-1
            let (qa, wa) = (Expr::atom(q.clone()), Expr::atom(w));
            m.eval_to(&at(&[1, 0]), Expr::mul(wa.clone(), qa.clone()));
            let iw = Expr::inv(wa);
            let iq = Expr::inv(qa.clone());
            m.step(
                Rule::InvProduct,
                &at(&[1]),
                Expr::mul(iq.clone(), iw.clone()),
            );
            m.step(Rule::MulAssoc, p, Expr::mul(Expr::mul(qa, iq), iw.clone()));
            m.step(Rule::InvMulRight, &at(&[0]), Expr::one(inst));
            m.step(Rule::MulOneLeft, p, iw);
            return true;
        }
    }
    // a^-1 * b^-1 = (b a)^-1 for atoms
    if let (Some(a), Some(b)) = (inv_atom(l), inv_atom(r)) {
        let ba = b.mul(a).expect("same instance");
        let prod = Expr::mul(Expr::atom(b.clone()), Expr::atom(a.clone()));
        m.step(Rule::InvProduct, p, Expr::inv(prod));
        m.eval_to(&at(&[0]), Expr::atom(ba));
        return true;
    }
    false
}

fn mul_macro(e: &Expr) -> Option<Mac> {
    let (l, r) = kids(e);
    let mut m = Mac::new(e);

    if pair_macro(&mut m, &[]) {
        return m.done();
    }
    // same with the head of a right-nested product
    if let Expr::Mul(r1, rest) = r {
        let probe = Expr::mul(l.clone(), (**r1).clone());
        if pair_macro(&mut Mac::new(&probe), &[]) {
            m.step(Rule::MulAssoc, &[], Expr::mul(probe, (**rest).clone()));
            pair_macro(&mut m, &[0]);
            if m.at(&[0]).is_one_atom() {
                m.step(Rule::MulOneLeft, &[], (**rest).clone());
            }
            return m.done();
        }
    }
    // float scalars up
    if let Expr::Scale(s, a) = l {
        m.step(
            Rule::ScaleMulLeft,
            &[],
            Expr::scale(s.clone(), Expr::mul((**a).clone(), r.clone())),
        );
        return m.done();
    }
    if let Expr::Scale(s, b) = r {
        m.step(
            Rule::ScaleMulRight,
            &[],
            Expr::scale(s.clone(), Expr::mul(l.clone(), (**b).clone())),
        );
        return m.done();
    }
    // right-nest
    if let Expr::Mul(a, b) = l {
        m.step(
            Rule::MulAssoc,
            &[],
            Expr::mul((**a).clone(), Expr::mul((**b).clone(), r.clone())),
        );
        return m.done();
    }
    if l.is_one_atom() {
        m.step(Rule::MulOneLeft, &[], r.clone());
        return m.done();
    }
    if r.is_one_atom() {
        m.step(Rule::MulOneRight, &[], l.clone());
        return m.done();
    }
    // adjacent atoms inside a longer product
    if let (Some(a), Expr::Mul(r1, rest)) = (atom_of(l), r) {
        if let Some(b) = atom_of(r1) {
            let ab = a.mul(b).ok()?;
            m.step(
                Rule::MulAssoc,
                &[],
                Expr::mul(Expr::mul(l.clone(), (**r1).clone()), (**rest).clone()),
            );
            m.eval_to(&[0], Expr::atom(ab));
            return m.done();
        }
    }
    // pull constant factors out of atoms next to inverses
    if let Some((c, monic)) = atom_of(l).and_then(|a| a.monic_split()) {
        m.eval_to(&[0], Expr::scale(c.clone(), Expr::atom(monic.clone())));
        m.step(
            Rule::ScaleMulLeft,
            &[],
            Expr::scale(c, Expr::mul(Expr::atom(monic), r.clone())),
        );
        return m.done();
    }
    if let Some((c, monic)) = atom_of(r).and_then(|a| a.monic_split()) {
        m.eval_to(&[1], Expr::scale(c.clone(), Expr::atom(monic.clone())));
        m.step(
            Rule::ScaleMulRight,
            &[],
            Expr::scale(c, Expr::mul(l.clone(), Expr::atom(monic))),
        );
        return m.done();
    }
    None
}

fn distribute_macro(e: &Expr) -> Option<Mac> {
    let Expr::Mul(l, r) = e else { return None };
    if !classify(e).is_legal() || e.is_inverse_free() {
        return None;
    }
    let mut m = Mac::new(e);
    if let Expr::Add(b, c) = &**r {
        let to = Expr::add(
            Expr::mul((**l).clone(), (**b).clone()),
            Expr::mul((**l).clone(), (**c).clone()),
        );
        m.step(Rule::DistribLeft, &[], to);
        return m.done();
    }
    if let Expr::Add(b, c) = &**l {
        let to = Expr::add(
            Expr::mul((**b).clone(), (**r).clone()),
            Expr::mul((**c).clone(), (**r).clone()),
        );
        m.step(Rule::DistribRight, &[], to);
        return m.done();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Instance;
    use crate::fraction::rules::replay;
    use crate::parser::parse;

    fn nf(s: &str, inst: Instance) -> Expr {
        let e = parse(s, inst).unwrap();
        let (n, trace) = normalize_traced(&e).unwrap();
        assert_eq!(replay(&e, &trace).unwrap(), n, "trace must replay");
        n
    }

    fn nc(s: &str) -> Expr {
        nf(s, Instance::PolyNc(1))
    }

    #[test]
    fn cancellation() {
        assert_eq!(
            nc("({1+x1})^-1 * {1+x1}"),
            parse("{1}", Instance::PolyNc(1)).unwrap()
        );
    }

    #[test]
    fn qplus_collapses() {
        let q = Instance::QPlus;
        assert_eq!(nf("{2} + {3}", q), parse("{5}", q).unwrap());
        assert_eq!(nf("2 . ({6})^-1", q), parse("{1/3}", q).unwrap());
        assert_eq!(nf("({2} + ({3})^-1)^-1 * {7}", q), parse("{3}", q).unwrap());
    }

    #[test]
    fn inverse_of_product() {
        let n2 = Instance::PolyNc(2);
        let a = nf("({1+x1} * {1+x2})^-1", n2);
        let b = nf("({1+x2})^-1 * ({1+x1})^-1", n2);
        assert_eq!(a, b);
        assert!(!a.is_inverse_free());
    }

    #[test]
    fn double_inverse() {
        assert_eq!(nc("(({1+x1})^-1)^-1"), nc("{1+x1}"));
    }

    #[test]
    fn like_terms_merge() {
        let a = nc("({1+x1})^-1 + {1} + 2 . ({1+x1})^-1");
        let b = nc("3 . ({1+x1})^-1 + {1}");
        assert_eq!(a, b);
    }

    #[test]
    fn division_of_atoms() {
        // (1 + x1)^2 / (1 + x1)
        let a = nc("({1+x1} * {1+x1}) * ({1+x1})^-1");
        assert_eq!(a, nc("{1+x1}"));
        let b = nc("({1+x1})^-1 * ({1+x1} * {1+x1})");
        assert_eq!(b, nc("{1+x1}"));
    }

    #[test]
    fn null_collapses() {
        assert_eq!(nc("{0} * ({1+x1})^-1"), nc("{0}"));
        assert!(normalize(&parse("({0})^-1", Instance::PolyNc(1)).unwrap()).is_err());
    }

    #[test]
    fn scaled_inverse() {
        let a = nc("(2 . {1+x1})^-1");
        let b = nc("1/2 . ({1+x1})^-1");
        assert_eq!(a, b);
        let c = nc("({2+2x1})^-1");
        assert_eq!(a, c);
    }
}
