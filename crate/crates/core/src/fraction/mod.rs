//! The semialgebra of fractions: legal expressions up to the generated
//! equivalence.

mod eq;
mod normalize;
pub mod rules;
mod search;

use std::fmt;
use std::sync::OnceLock;

pub use eq::{eq, EqEvidence, EqVerdict};
pub use normalize::{normalize, normalize_traced};
pub use rules::{applicable_steps, replay, reverse_trace, RewriteStep, Rule, StepRecord};
pub use search::search_equal;

use crate::base::{BaseElement, Instance, Scalar};
use crate::commoracle::{g_map, CommFraction};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::legality::{classify, LegalityClass};
use crate::parser::parse;

/// A legal expression regarded as an element of the fraction semialgebra.
/// The normal form (and, on commutative instances, the classical fraction)
/// are computed once and cached.
#[derive(Clone)]
pub struct Fraction {
    rep: Expr,
    instance: Instance,
    class: LegalityClass,
    nf: OnceLock<Result<(Expr, Vec<RewriteStep>)>>,
    comm: OnceLock<Result<CommFraction>>,
}

impl Fraction {
    pub fn new(rep: Expr) -> Result<Self> {
        let instance = rep.check_instance()?;
        let class = classify(&rep);
        if !class.is_legal() {
            return Err(Error::Illegal(rep.render()));
        }
        Ok(Fraction {
            rep,
            instance,
            class,
            nf: OnceLock::new(),
            comm: OnceLock::new(),
        })
    }

    pub fn parse(text: &str, instance: Instance) -> Result<Self> {
        Fraction::new(parse(text, instance)?)
    }

    /// The class of a base element.
    pub fn from_base(x: BaseElement) -> Self {
        Fraction::new(Expr::atom(x)).expect("atoms are legal")
    }

    pub fn zero(inst: Instance) -> Self {
        Fraction::from_base(inst.zero())
    }

    pub fn one(inst: Instance) -> Self {
        Fraction::from_base(inst.one())
    }

    pub fn rep(&self) -> &Expr {
        &self.rep
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn class(&self) -> LegalityClass {
        self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class == LegalityClass::Null
    }

    /// Normal form of the representative and the trace leading to it.
    pub fn normal_form(&self) -> Result<&(Expr, Vec<RewriteStep>)> {
        self.nf
            .get_or_init(|| normalize_traced(&self.rep))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Image in the classical fraction semialgebra (commutative instances).
    pub fn comm_fraction(&self) -> Result<&CommFraction> {
        self.comm
            .get_or_init(|| g_map(&self.rep))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn same(&self, other: &Fraction) -> Result<()> {
        if self.instance != other.instance {
            return Err(Error::InstanceMismatch(self.instance, other.instance));
        }
        Ok(())
    }

    pub fn add(&self, other: &Fraction) -> Result<Fraction> {
        frac_arith(FracOp::Add, self, other)
    }

    pub fn mul(&self, other: &Fraction) -> Result<Fraction> {
        frac_arith(FracOp::Mul, self, other)
    }

    pub fn scale(&self, r: &Scalar) -> Fraction {
        frac_scale(r, self)
    }

    pub fn inv(&self) -> Result<Fraction> {
        frac_inv(self)
    }
}

impl PartialEq for Fraction {
    /// Representatives are compared literally; use [`eq`] for equality in
    /// the fraction semialgebra.
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fraction({})", self.rep)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rep, f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FracOp {
    Add,
    Mul,
}

pub fn frac_arith(op: FracOp, lhs: &Fraction, rhs: &Fraction) -> Result<Fraction> {
    lhs.same(rhs)?;
    let rep = match op {
        FracOp::Add => Expr::add(lhs.rep.clone(), rhs.rep.clone()),
        FracOp::Mul => Expr::mul(lhs.rep.clone(), rhs.rep.clone()),
    };
    Fraction::new(rep)
}

pub fn frac_scale(r: &Scalar, f: &Fraction) -> Fraction {
    Fraction::new(Expr::scale(r.clone(), f.rep.clone())).expect("scaling keeps legality")
}

pub fn frac_inv(f: &Fraction) -> Result<Fraction> {
    if f.is_zero() {
        return Err(Error::InverseOfZero);
    }
    Fraction::new(Expr::inv(f.rep.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_classes() {
        let nc = Instance::PolyNc(1);
        let x = Fraction::parse("{1+x1}", nc).unwrap();
        let z = Fraction::zero(nc);
        assert_eq!(x.add(&z).unwrap().class(), x.class());
        assert!(x.mul(&z).unwrap().is_zero());
        assert!(x.scale(&Scalar::zero()).is_zero());
        assert_eq!(frac_inv(&z).unwrap_err(), Error::InverseOfZero);
        assert!(Fraction::parse("({0})^-1", nc).is_err());
        let other = Fraction::one(Instance::PolyComm(1));
        assert!(matches!(x.add(&other), Err(Error::InstanceMismatch(..))));
    }
}
