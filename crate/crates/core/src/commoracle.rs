//! Classical fractions `a/b` over a commutative instance, used as a
//! brute-force oracle for the general construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{BaseElement, Instance, Polynomial, Scalar, Word};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fraction::Fraction;
use crate::homext::{sample_homs, MonotoneHom};
use crate::legality::classify;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommFraction {
    num: BaseElement,
    den: BaseElement,
}

fn require_commutative(inst: Instance) -> Result<()> {
    if inst.commutative() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{inst} is not commutative")))
    }
}

impl CommFraction {
    pub fn new(num: BaseElement, den: BaseElement) -> Result<Self> {
        if num.instance() != den.instance() {
            return Err(Error::InstanceMismatch(num.instance(), den.instance()));
        }
        require_commutative(num.instance())?;
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(CommFraction { num, den })
    }

    /// `x / 1`.
    pub fn from_base(x: BaseElement) -> Result<Self> {
        let one = x.instance().one();
        CommFraction::new(x, one)
    }

    pub fn num(&self) -> &BaseElement {
        &self.num
    }

    pub fn den(&self) -> &BaseElement {
        &self.den
    }

    pub fn instance(&self) -> Instance {
        self.num.instance()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, h: &MonotoneHom) -> Result<Scalar> {
        let d = h.apply(&self.den)?;
        let inv = d
            .recip()
            .ok_or_else(|| Error::Domain("denominator vanishes".into()))?;
        Ok(&h.apply(&self.num)? * &inv)
    }

    pub fn record(&self) -> CommFractionRecord {
        CommFractionRecord {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
    }
}

impl fmt::Display for CommFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CommFractionRecord {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug)]
pub enum CfOp<'a> {
    Add(&'a CommFraction),
    Mul(&'a CommFraction),
    Scale(&'a Scalar),
    Inv,
}

/// `a/b + c/d = (ad + bc)/(bd)`, `(a/b)(c/d) = ac/bd`, `r(a/b) = (ra)/b`,
/// `(a/b)^-1 = b/a`.
pub fn cf_arith(op: CfOp<'_>, f: &CommFraction) -> Result<CommFraction> {
    match op {
        CfOp::Add(g) => {
            let num = f.num.mul(&g.den)?.add(&f.den.mul(&g.num)?)?;
            CommFraction::new(num, f.den.mul(&g.den)?)
        }
        CfOp::Mul(g) => CommFraction::new(f.num.mul(&g.num)?, f.den.mul(&g.den)?),
        CfOp::Scale(r) => CommFraction::new(f.num.scale(r), f.den.clone()),
        CfOp::Inv => {
            if f.is_zero() {
                return Err(Error::InverseOfZero);
            }
            CommFraction::new(f.den.clone(), f.num.clone())
        }
    }
}

/// Cross-multiplication with `t = 1`, which decides equality because the
/// provided instances cancel multiplicatively.
pub fn cf_eq(a: &CommFraction, b: &CommFraction) -> Result<bool> {
    debug_assert!(a.instance().cancellative());
    Ok(a.num.mul(&b.den)? == b.num.mul(&a.den)?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CfLeq {
    /// `x b t <= y a t` for this multiplier `t`.
    Holds(BaseElement),
    Fails(MonotoneHom),
    Unknown,
}

/// Multipliers tried by `cf_leq`: 1, then products of `1 + x_i` and powers
/// of the power universal element, up to total degree `t_budget`.
pub fn multipliers(inst: Instance, t_budget: u32) -> Vec<BaseElement> {
    let mut out = vec![inst.one()];
    let n = inst.n_vars() as u16;
    let mut layer = vec![inst.one()];
    let rounds = if n == 0 { 0 } else { t_budget };
    for _ in 0..rounds {
        let mut next = Vec::new();
        for t in &layer {
            for i in 1..=n {
                let f = inst
                    .element(Polynomial::from_terms([
                        (Word::unit(), Scalar::one()),
                        (Word::letter(i), Scalar::one()),
                    ]))
                    .expect("1 + x_i is an element");
                let p = t.mul(&f).expect("same instance");
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    let u = inst.pu();
    for k in 1..=t_budget {
        let p = u.pow(k);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// `x/a <= y/b` iff `x b t <= y a t` for some nonzero `t`. Holds is sound;
/// Fails needs a sampled hom with a strictly larger left value.
pub fn cf_leq(
    f1: &CommFraction,
    f2: &CommFraction,
    t_budget: u32,
    samples: usize,
    seed: u64,
) -> Result<CfLeq> {
    let lhs = f1.num.mul(&f2.den)?;
    let rhs = f2.num.mul(&f1.den)?;
    for t in multipliers(f1.instance(), t_budget) {
        if lhs.mul(&t)?.leq(&rhs.mul(&t)?)? {
            return Ok(CfLeq::Holds(t));
        }
    }
    for h in sample_homs(f1.instance(), samples, seed) {
        if f1.eval(&h)? > f2.eval(&h)? {
            return Ok(CfLeq::Fails(h));
        }
    }
    Ok(CfLeq::Unknown)
}

/// The map from expressions to classical fractions: atoms go to `x/1`, the
/// formal operations to fraction arithmetic, inversion swaps.
pub fn g_map(e: &Expr) -> Result<CommFraction> {
    require_commutative(e.instance())?;
    if !classify(e).is_legal() {
        return Err(Error::Illegal(e.render()));
    }
    g_rec(e)
}

fn g_rec(e: &Expr) -> Result<CommFraction> {
    match e {
        Expr::Atom(x) => CommFraction::from_base(x.clone()),
        Expr::Add(a, b) => cf_arith(CfOp::Add(&g_rec(b)?), &g_rec(a)?),
        Expr::Mul(a, b) => cf_arith(CfOp::Mul(&g_rec(b)?), &g_rec(a)?),
        Expr::Scale(r, a) => cf_arith(CfOp::Scale(r), &g_rec(a)?),
        Expr::Inv(a) => cf_arith(CfOp::Inv, &g_rec(a)?),
    }
}

pub fn g_fraction(f: &Fraction) -> Result<CommFraction> {
    g_map(f.rep())
}

/// `a/b -> a * b^-1`.
pub fn h_map(c: &CommFraction) -> Result<Fraction> {
    Fraction::new(Expr::mul(
        Expr::atom(c.num.clone()),
        Expr::inv(Expr::atom(c.den.clone())),
    ))
}
