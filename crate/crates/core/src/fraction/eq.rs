//! Three-valued equality in the fraction semialgebra.

use crate::budget::Budget;
use crate::commoracle::{cf_eq, CommFraction};
use crate::error::{Error, Result};
use crate::fraction::rules::{reverse_trace, RewriteStep};
use crate::fraction::search::search_equal;
use crate::fraction::Fraction;
use crate::homext::{eval_expr, separating_hom, shared_homs, MonotoneHom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqEvidence {
    /// Replays from the left representative to the right one.
    Rewrites(Vec<RewriteStep>),
    /// Both sides map to cross-multiplication-equal classical fractions.
    CrossMultiplication {
        lhs: CommFraction,
        rhs: CommFraction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal(EqEvidence),
    /// The hom takes different values on the two sides.
    NotEqual(MonotoneHom),
    Unknown,
}

impl EqVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            EqVerdict::Equal(_) => "equal",
            EqVerdict::NotEqual(_) => "not-equal",
            EqVerdict::Unknown => "unknown",
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, EqVerdict::Equal(_))
    }

    pub fn is_not_equal(&self) -> bool {
        matches!(self, EqVerdict::NotEqual(_))
    }
}

/// Extra points tried when the classical fractions already differ and only
/// a witness is missing.
const WITNESS_SAMPLES: usize = 256;

/// Equal and NotEqual are sound; Unknown means the budget ran out.
///
/// Order of attempts: literal identity; identical normal forms (this
/// decides every pair whose normal forms are inverse-free); the classical
/// fraction oracle on commutative instances; falsification by sampled
/// homomorphisms; bidirectional rewrite search.
pub fn eq(a: &Fraction, b: &Fraction, budget: &Budget) -> Result<EqVerdict> {
    if a.instance() != b.instance() {
        return Err(Error::InstanceMismatch(a.instance(), b.instance()));
    }
    if a.rep() == b.rep() {
        return Ok(EqVerdict::Equal(EqEvidence::Rewrites(Vec::new())));
    }
    let (na, ta) = a.normal_form()?;
    let (nb, tb) = b.normal_form()?;
    let join = |mid: Vec<RewriteStep>| {
        let mut t = ta.clone();
        t.extend(mid);
        t.extend(reverse_trace(tb));
        t
    };
    if na == nb {
        return Ok(EqVerdict::Equal(EqEvidence::Rewrites(join(Vec::new()))));
    }

    let inst = a.instance();
    if budget.commutative_oracle && inst.commutative() {
        let (ga, gb) = (a.comm_fraction()?, b.comm_fraction()?);
        if cf_eq(ga, gb)? {
            return Ok(EqVerdict::Equal(EqEvidence::CrossMultiplication {
                lhs: ga.clone(),
                rhs: gb.clone(),
            }));
        }
        let count = budget.samples.max(WITNESS_SAMPLES);
        for h in shared_homs(inst, count, budget.seed).iter() {
            if ga.eval(h)? != gb.eval(h)? {
                return Ok(EqVerdict::NotEqual(h.clone()));
            }
        }
    }

    if let Some(h) = separating_hom(na, nb, budget.samples, budget.seed)? {
        // confirm on the original representatives
        debug_assert_ne!(eval_expr(&h, a.rep())?, eval_expr(&h, b.rep())?);
        return Ok(EqVerdict::NotEqual(h));
    }

    if let Some(mid) = search_equal(na, nb, budget.rewrites) {
        return Ok(EqVerdict::Equal(EqEvidence::Rewrites(join(mid))));
    }
    Ok(EqVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Instance;
    use crate::fraction::rules::replay;

    fn frac(s: &str, inst: Instance) -> Fraction {
        Fraction::parse(s, inst).unwrap()
    }

    #[test]
    fn reflexive_has_empty_trace() {
        let a = frac("({1+x1})^-1", Instance::PolyNc(1));
        assert_eq!(
            eq(&a, &a.clone(), &Budget::default()).unwrap(),
            EqVerdict::Equal(EqEvidence::Rewrites(vec![]))
        );
    }

    #[test]
    fn rational_example() {
        let q = Instance::QPlus;
        let a = frac("2 . ({6})^-1", q);
        let b = frac("3 . ({9})^-1", q);
        match eq(&a, &b, &Budget::default()).unwrap() {
            EqVerdict::Equal(EqEvidence::Rewrites(t)) => {
                assert_eq!(replay(a.rep(), &t).unwrap(), *b.rep())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn separated_by_point() {
        let nc = Instance::PolyNc(1);
        let a = frac("({1+x1})^-1", nc);
        let b = frac("({2+x1})^-1", nc);
        match eq(&a, &b, &Budget::default()).unwrap() {
            EqVerdict::NotEqual(h) => {
                // values 1/2 and 1/3 at x1 = 1
                assert_eq!(h.point, vec![crate::base::Scalar::one()]);
                assert_ne!(
                    eval_expr(&h, a.rep()).unwrap(),
                    eval_expr(&h, b.rep()).unwrap()
                )
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn commutative_products_commute() {
        let c = Instance::PolyComm(1);
        let a = frac("{1+x1} * ({2+x1})^-1", c);
        let b = frac("({2+x1})^-1 * {1+x1}", c);
        assert!(eq(&a, &b, &Budget::default()).unwrap().is_equal());
    }
}
