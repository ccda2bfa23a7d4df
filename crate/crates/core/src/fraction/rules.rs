//! The axiom families as checkable relations, and replayable rewrite steps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::base::{Instance, Scalar};
use crate::error::{Error, Result};
use crate::expr::{Expr, Path};
use crate::legality::{classify, eval_in_s, LegalityClass};
use crate::parser::parse;

/// One pair family. A step uses a family either left-to-right (`forward`)
/// or right-to-left.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Rule {
    // A1
    AddAssoc,
    MulAssoc,
    DistribLeft,
    DistribRight,
    AddComm,
    AddZeroLeft,
    AddZeroRight,
    // A2
    MulOneLeft,
    MulOneRight,
    MulZeroLeft,
    MulZeroRight,
    // A3
    ScaleAdd,
    ScalarSum,
    ScaleMulLeft,
    ScaleMulRight,
    ScaleScale,
    ScaleOne,
    ScaleZero,
    // A4
    InvMulLeft,
    InvMulRight,
    InvProduct,
    InvOne,
    InvScale,
    // A5
    Evaluate,
    // A6
    NullToZero,
}

pub const ALL_RULES: [Rule; 25] = [
    Rule::AddAssoc,
    Rule::MulAssoc,
    Rule::DistribLeft,
    Rule::DistribRight,
    Rule::AddComm,
    Rule::AddZeroLeft,
    Rule::AddZeroRight,
    Rule::MulOneLeft,
    Rule::MulOneRight,
    Rule::MulZeroLeft,
    Rule::MulZeroRight,
    Rule::ScaleAdd,
    Rule::ScalarSum,
    Rule::ScaleMulLeft,
    Rule::ScaleMulRight,
    Rule::ScaleScale,
    Rule::ScaleOne,
    Rule::ScaleZero,
    Rule::InvMulLeft,
    Rule::InvMulRight,
    Rule::InvProduct,
    Rule::InvOne,
    Rule::InvScale,
    Rule::Evaluate,
    Rule::NullToZero,
];

fn non_null(e: &Expr) -> bool {
    classify(e) == LegalityClass::NonNullLegal
}

impl Rule {
    /// Which of the six families the rule belongs to (1..=6).
    pub fn family(self) -> u8 {
        use Rule::*;
        match self {
            AddAssoc | MulAssoc | DistribLeft | DistribRight | AddComm | AddZeroLeft
            | AddZeroRight => 1,
            MulOneLeft | MulOneRight | MulZeroLeft | MulZeroRight => 2,
            ScaleAdd | ScalarSum | ScaleMulLeft | ScaleMulRight | ScaleScale | ScaleOne
            | ScaleZero => 3,
            InvMulLeft | InvMulRight | InvProduct | InvOne | InvScale => 4,
            Evaluate => 5,
            NullToZero => 6,
        }
    }

    pub fn name(self) -> &'static str {
        use Rule::*;
        match self {
            AddAssoc => "add-assoc",
            MulAssoc => "mul-assoc",
            DistribLeft => "distrib-left",
            DistribRight => "distrib-right",
            AddComm => "add-comm",
            AddZeroLeft => "add-zero-left",
            AddZeroRight => "add-zero-right",
            MulOneLeft => "mul-one-left",
            MulOneRight => "mul-one-right",
            MulZeroLeft => "mul-zero-left",
            MulZeroRight => "mul-zero-right",
            ScaleAdd => "scale-add",
            ScalarSum => "scalar-sum",
            ScaleMulLeft => "scale-mul-left",
            ScaleMulRight => "scale-mul-right",
            ScaleScale => "scale-scale",
            ScaleOne => "scale-one",
            ScaleZero => "scale-zero",
            InvMulLeft => "inv-mul-left",
            InvMulRight => "inv-mul-right",
            InvProduct => "inv-product",
            InvOne => "inv-one",
            InvScale => "inv-scale",
            Evaluate => "evaluate",
            NullToZero => "null-to-zero",
        }
    }

    /// Is `(lhs, rhs)` a pair of this family (in the stated order)?
    /// Legality of the two sides is checked separately by the caller.
    pub fn relates(self, lhs: &Expr, rhs: &Expr) -> bool {
        use Expr::*;
        use Rule::*;
        match (self, lhs, rhs) {
            (AddAssoc, Add(ab, c), Add(a2, bc2)) => match (&**ab, &**bc2) {
                (Add(a, b), Add(b2, c2)) => a == a2 && b == b2 && c == c2,
                _ => false,
            },
            (MulAssoc, Mul(ab, c), Mul(a2, bc2)) => match (&**ab, &**bc2) {
                (Mul(a, b), Mul(b2, c2)) => a == a2 && b == b2 && c == c2,
                _ => false,
            },
            (DistribLeft, Mul(a, bc), Add(ab, ac)) => match (&**bc, &**ab, &**ac) {
                (Add(b, c), Mul(a1, b1), Mul(a2, c1)) => a == a1 && a == a2 && b == b1 && c == c1,
                _ => false,
            },
            (DistribRight, Mul(bc, a), Add(ba, ca)) => match (&**bc, &**ba, &**ca) {
                (Add(b, c), Mul(b1, a1), Mul(c1, a2)) => a == a1 && a == a2 && b == b1 && c == c1,
                _ => false,
            },
            (AddComm, Add(a, b), Add(b2, a2)) => a == a2 && b == b2,
            (AddZeroLeft, Add(z, a), r) => z.is_zero_atom() && **a == *r,
            (AddZeroRight, Add(a, z), r) => z.is_zero_atom() && **a == *r,
            (MulOneLeft, Mul(o, a), r) => o.is_one_atom() && **a == *r,
            (MulOneRight, Mul(a, o), r) => o.is_one_atom() && **a == *r,
            (MulZeroLeft, Mul(z, _), r) => z.is_zero_atom() && r.is_zero_atom(),
            (MulZeroRight, Mul(_, z), r) => z.is_zero_atom() && r.is_zero_atom(),
            (ScaleAdd, Scale(r, ab), Add(ra, rb)) => match (&**ab, &**ra, &**rb) {
                (Add(a, b), Scale(r1, a1), Scale(r2, b1)) => {
                    r == r1 && r == r2 && a == a1 && b == b1
                }
                _ => false,
            },
            (ScalarSum, Scale(rt, a), Add(ra, ta)) => match (&**ra, &**ta) {
                (Scale(r, a1), Scale(t, a2)) => a == a1 && a == a2 && *rt == r + t,
                _ => false,
            },
            (ScaleMulLeft, Scale(r, ab), Mul(ra, b1)) => match (&**ab, &**ra) {
                (Mul(a, b), Scale(r1, a1)) => r == r1 && a == a1 && b == b1,
                _ => false,
            },
            (ScaleMulRight, Scale(r, ab), Mul(a1, rb)) => match (&**ab, &**rb) {
                (Mul(a, b), Scale(r1, b1)) => r == r1 && a == a1 && b == b1,
                _ => false,
            },
            (ScaleScale, Scale(rt, a), Scale(r, ta)) => match &**ta {
                Scale(t, a1) => a == a1 && *rt == r * t,
                _ => false,
            },
            (ScaleOne, Scale(r, a), b) => r.is_one() && **a == *b,
            (ScaleZero, Scale(r, _), z) => r.is_zero() && z.is_zero_atom(),
            (InvMulLeft, Mul(ia, a), o) => match &**ia {
                Inv(a1) => a1 == a && o.is_one_atom() && non_null(a),
                _ => false,
            },
            (InvMulRight, Mul(a, ia), o) => match &**ia {
                Inv(a1) => a1 == a && o.is_one_atom() && non_null(a),
                _ => false,
            },
            (InvProduct, Inv(ab), Mul(ib, ia)) => match (&**ab, &**ib, &**ia) {
                (Mul(a, b), Inv(b1), Inv(a1)) => a == a1 && b == b1 && non_null(a) && non_null(b),
                _ => false,
            },
            (InvOne, Inv(o), o2) => o.is_one_atom() && o2.is_one_atom(),
            (InvScale, Scale(s, ia), Inv(sa)) => match (&**ia, &**sa) {
                (Inv(a), Scale(s_inv, a1)) => {
                    a == a1 && !s.is_zero() && s.recip().as_ref() == Some(s_inv) && non_null(a)
                }
                _ => false,
            },
            (Evaluate, a, b) => {
                a.is_inverse_free()
                    && b.is_inverse_free()
                    && matches!((eval_in_s(a), eval_in_s(b)), (Ok(x), Ok(y)) if x == y)
            }
            (NullToZero, a, z) => classify(a) == LegalityClass::Null && z.is_zero_atom(),
            _ => false,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rule> {
        ALL_RULES
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown rule {s:?}")))
    }
}

/// Replace the subterm `from` at `path` by `to`, justified by `rule` used in
/// the direction given by `forward`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteStep {
    pub rule: Rule,
    pub forward: bool,
    pub path: Path,
    pub from: Expr,
    pub to: Expr,
}

impl RewriteStep {
    /// Builds a step, picking the orientation in which the pair belongs to
    /// the family.
    pub fn new(rule: Rule, path: Path, from: Expr, to: Expr) -> Result<RewriteStep> {
        let forward = if rule.relates(&from, &to) {
            true
        } else if rule.relates(&to, &from) {
            false
        } else {
            return Err(Error::Verification(format!(
                "{rule}: {from} and {to} are not related"
            )));
        };
        Ok(RewriteStep {
            rule,
            forward,
            path,
            from,
            to,
        })
    }

    /// The same step read backwards.
    pub fn inverse(&self) -> RewriteStep {
        RewriteStep {
            rule: self.rule,
            forward: !self.forward,
            path: self.path.clone(),
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }

    /// Check the step against `e` and return the rewritten expression.
    pub fn apply(&self, e: &Expr) -> Result<Expr> {
        let fail =
            |m: String| Error::Verification(format!("{} at {:?}: {m}", self.rule, self.path));
        let here = e
            .at(&self.path)
            .ok_or_else(|| fail("no such position".into()))?;
        if *here != self.from {
            return Err(fail(format!("expected {}, found {here}", self.from)));
        }
        let ok = if self.forward {
            self.rule.relates(&self.from, &self.to)
        } else {
            self.rule.relates(&self.to, &self.from)
        };
        if !ok {
            return Err(fail("pair not in the family".into()));
        }
        if !classify(&self.from).is_legal() || !classify(&self.to).is_legal() {
            return Err(fail("illegal side".into()));
        }
        let out = e
            .replaced(&self.path, self.to.clone())
            .expect("position exists");
        if !classify(&out).is_legal() {
            return Err(fail("result is illegal".into()));
        }
        Ok(out)
    }

    pub fn record(&self) -> StepRecord {
        StepRecord {
            rule: self.rule.name().to_string(),
            forward: self.forward,
            path: self.path.clone(),
            from: self.from.render(),
            to: self.to.render(),
        }
    }

    pub fn from_record(r: &StepRecord, instance: Instance) -> Result<RewriteStep> {
        Ok(RewriteStep {
            rule: r.rule.parse()?,
            forward: r.forward,
            path: r.path.clone(),
            from: parse(&r.from, instance)?,
            to: parse(&r.to, instance)?,
        })
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = if self.forward { "" } else { "~" };
        write!(
            f,
            "{dir}{} @{:?}: {} => {}",
            self.rule, self.path, self.from, self.to
        )
    }
}

/// Serialized form of a step.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub rule: String,
    pub forward: bool,
    pub path: Vec<u8>,
    pub from: String,
    pub to: String,
}

/// Apply a whole trace, checking every step.
pub fn replay(start: &Expr, trace: &[RewriteStep]) -> Result<Expr> {
    let mut cur = start.clone();
    for step in trace {
        cur = step.apply(&cur)?;
    }
    Ok(cur)
}

/// Trace read backwards: takes the end point of `trace` back to its start.
pub fn reverse_trace(trace: &[RewriteStep]) -> Vec<RewriteStep> {
    trace.iter().rev().map(RewriteStep::inverse).collect()
}

/// Rewrites applicable at the root of `e` whose result is determined by `e`
/// alone. With `expanding`, also steps that grow the term by inserting units.
fn local_moves(e: &Expr, expanding: bool) -> Vec<(Rule, Expr)> {
    use Expr::*;
    use Rule::*;
    let mut out = Vec::new();
    let inst = e.instance();
    let cls = classify(e);

    match e {
        Add(l, r) => {
            if let Add(a, b) = &**l {
                out.push((
                    AddAssoc,
                    Expr::add((**a).clone(), Expr::add((**b).clone(), (**r).clone())),
                ));
            }
            if let Add(b, c) = &**r {
                out.push((
                    AddAssoc,
                    Expr::add(Expr::add((**l).clone(), (**b).clone()), (**c).clone()),
                ));
            }
            out.push((AddComm, Expr::add((**r).clone(), (**l).clone())));
            if l.is_zero_atom() {
                out.push((AddZeroLeft, (**r).clone()));
            }
            if r.is_zero_atom() {
                out.push((AddZeroRight, (**l).clone()));
            }
            if let (Mul(a, b), Mul(a2, c)) = (&**l, &**r) {
                if a == a2 {
                    out.push((
                        DistribLeft,
                        Expr::mul((**a).clone(), Expr::add((**b).clone(), (**c).clone())),
                    ));
                }
            }
            if let (Mul(b, a), Mul(c, a2)) = (&**l, &**r) {
                if a == a2 {
                    out.push((
                        DistribRight,
                        Expr::mul(Expr::add((**b).clone(), (**c).clone()), (**a).clone()),
                    ));
                }
            }
            if let (Scale(r1, a), Scale(r2, b)) = (&**l, &**r) {
                if r1 == r2 {
                    out.push((
                        ScaleAdd,
                        Expr::scale(r1.clone(), Expr::add((**a).clone(), (**b).clone())),
                    ));
                }
                if a == b {
                    out.push((ScalarSum, Expr::scale(r1 + r2, (**a).clone())));
                }
            }
        }
        Mul(l, r) => {
            if let Mul(a, b) = &**l {
                out.push((
                    MulAssoc,
                    Expr::mul((**a).clone(), Expr::mul((**b).clone(), (**r).clone())),
                ));
            }
            if let Mul(b, c) = &**r {
                out.push((
                    MulAssoc,
                    Expr::mul(Expr::mul((**l).clone(), (**b).clone()), (**c).clone()),
                ));
            }
            if let Add(b, c) = &**r {
                out.push((
                    DistribLeft,
                    Expr::add(
                        Expr::mul((**l).clone(), (**b).clone()),
                        Expr::mul((**l).clone(), (**c).clone()),
                    ),
                ));
            }
            if let Add(b, c) = &**l {
                out.push((
                    DistribRight,
                    Expr::add(
                        Expr::mul((**b).clone(), (**r).clone()),
                        Expr::mul((**c).clone(), (**r).clone()),
                    ),
                ));
            }
            if l.is_one_atom() {
                out.push((MulOneLeft, (**r).clone()));
            }
            if r.is_one_atom() {
                out.push((MulOneRight, (**l).clone()));
            }
            if l.is_zero_atom() && classify(r).is_legal() {
                out.push((MulZeroLeft, Expr::zero(inst)));
            }
            if r.is_zero_atom() && classify(l).is_legal() {
                out.push((MulZeroRight, Expr::zero(inst)));
            }
            if let Scale(s, a) = &**l {
                out.push((
                    ScaleMulLeft,
                    Expr::scale(s.clone(), Expr::mul((**a).clone(), (**r).clone())),
                ));
            }
            if let Scale(s, b) = &**r {
                out.push((
                    ScaleMulRight,
                    Expr::scale(s.clone(), Expr::mul((**l).clone(), (**b).clone())),
                ));
            }
            match (&**l, &**r) {
                (Inv(a), b) if **a == *b => out.push((InvMulLeft, Expr::one(inst))),
                (a, Inv(b)) if *a == **b => out.push((InvMulRight, Expr::one(inst))),
                _ => {}
            }
            if let (Inv(b), Inv(a)) = (&**l, &**r) {
                out.push((
                    InvProduct,
                    Expr::inv(Expr::mul((**a).clone(), (**b).clone())),
                ));
            }
        }
        Scale(s, a) => {
            if s.is_one() {
                out.push((ScaleOne, (**a).clone()));
            }
            if s.is_zero() {
                out.push((ScaleZero, Expr::zero(inst)));
            }
            match &**a {
                Add(x, y) => out.push((
                    ScaleAdd,
                    Expr::add(
                        Expr::scale(s.clone(), (**x).clone()),
                        Expr::scale(s.clone(), (**y).clone()),
                    ),
                )),
                Mul(x, y) => {
                    out.push((
                        ScaleMulLeft,
                        Expr::mul(Expr::scale(s.clone(), (**x).clone()), (**y).clone()),
                    ));
                    out.push((
                        ScaleMulRight,
                        Expr::mul((**x).clone(), Expr::scale(s.clone(), (**y).clone())),
                    ));
                }
                Scale(t, x) => out.push((ScaleScale, Expr::scale(s * t, (**x).clone()))),
                Inv(x) if !s.is_zero() => out.push((
                    InvScale,
                    Expr::inv(Expr::scale(s.recip().unwrap(), (**x).clone())),
                )),
                _ => {}
            }
        }
        Inv(a) => {
            if a.is_one_atom() {
                out.push((InvOne, Expr::one(inst)));
            }
            match &**a {
                Mul(x, y) => out.push((
                    InvProduct,
                    Expr::mul(Expr::inv((**y).clone()), Expr::inv((**x).clone())),
                )),
                Scale(s, x) if !s.is_zero() => out.push((
                    InvScale,
                    Expr::scale(s.recip().unwrap(), Expr::inv((**x).clone())),
                )),
                _ => {}
            }
        }
        Atom(_) => {}
    }

    if !e.is_atom() && e.is_inverse_free() {
        if let Ok(v) = eval_in_s(e) {
            out.push((Evaluate, Expr::atom(v)));
        }
    }
    if cls == LegalityClass::Null && !e.is_zero_atom() {
        out.push((NullToZero, Expr::zero(inst)));
    }
    if expanding && cls.is_legal() {
        out.push((AddZeroRight, Expr::add(e.clone(), Expr::zero(inst))));
        out.push((MulOneRight, Expr::mul(e.clone(), Expr::one(inst))));
        out.push((ScaleOne, Expr::scale(Scalar::one(), e.clone())));
    }
    out
}

/// Every single-step rewrite of `e` at any position that yields a legal
/// expression. Orientation is recorded on each step.
pub fn applicable_steps(e: &Expr, expanding: bool) -> Vec<RewriteStep> {
    let mut out = Vec::new();
    for path in e.positions() {
        let sub = e.at(&path).expect("position from positions()");
        for (rule, to) in local_moves(sub, expanding) {
            if to == *sub {
                continue;
            }
            let Ok(step) = RewriteStep::new(rule, path.clone(), sub.clone(), to) else {
                continue;
            };
            if step.apply(e).is_ok() {
                out.push(step);
            }
        }
    }
    out
}
