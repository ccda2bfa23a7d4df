//! Formal differences `a - b` of fractions, checked against caller-supplied
//! witnesses.

use std::fmt;

use crate::base::Scalar;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fraction::{eq, Fraction};
use crate::preorder::leq;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A real scalar as sign and magnitude; zero is always `Plus`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedScalar {
    sign: Sign,
    mag: Scalar,
}

impl SignedScalar {
    pub fn new(sign: Sign, mag: Scalar) -> Self {
        let sign = if mag.is_zero() { Sign::Plus } else { sign };
        SignedScalar { sign, mag }
    }

    pub fn plus(mag: Scalar) -> Self {
        SignedScalar::new(Sign::Plus, mag)
    }

    pub fn minus(mag: Scalar) -> Self {
        SignedScalar::new(Sign::Minus, mag)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mag(&self) -> &Scalar {
        &self.mag
    }

    pub fn neg(&self) -> Self {
        match self.sign {
            Sign::Plus => SignedScalar::minus(self.mag.clone()),
            Sign::Minus => SignedScalar::plus(self.mag.clone()),
        }
    }

    pub fn mul(&self, other: &SignedScalar) -> Self {
        let sign = if self.sign == other.sign {
            Sign::Plus
        } else {
            Sign::Minus
        };
        SignedScalar::new(sign, &self.mag * &other.mag)
    }

    pub fn add(&self, other: &SignedScalar) -> Self {
        if self.sign == other.sign {
            return SignedScalar::new(self.sign, &self.mag + &other.mag);
        }
        match self.mag.checked_sub(&other.mag) {
            Some(d) => SignedScalar::new(self.sign, d),
            None => SignedScalar::new(other.sign, other.mag.checked_sub(&self.mag).unwrap()),
        }
    }
}

impl fmt::Display for SignedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        write!(f, "{}", self.mag)
    }
}

impl std::str::FromStr for SignedScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix('-') {
            Some(rest) => Ok(SignedScalar::minus(rest.parse()?)),
            None => Ok(SignedScalar::plus(s.parse()?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalDifference {
    pub pos: Fraction,
    pub neg: Fraction,
}

impl FormalDifference {
    pub fn new(pos: Fraction, neg: Fraction) -> Result<Self> {
        if pos.instance() != neg.instance() {
            return Err(Error::InstanceMismatch(pos.instance(), neg.instance()));
        }
        Ok(FormalDifference { pos, neg })
    }

    /// `a - 0`.
    pub fn from_fraction(a: Fraction) -> Self {
        let z = Fraction::zero(a.instance());
        FormalDifference { pos: a, neg: z }
    }

    pub fn add(&self, other: &FormalDifference) -> Result<Self> {
        diff_add(self, other)
    }

    pub fn scale(&self, r: &SignedScalar) -> Self {
        diff_scale(r, self)
    }
}

impl fmt::Display for FormalDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] - [{}]", self.pos.rep(), self.neg.rep())
    }
}

pub enum DiffOp<'a> {
    Add(&'a FormalDifference),
    Scale(&'a SignedScalar),
}

pub fn diff_combine(op: DiffOp<'_>, d: &FormalDifference) -> Result<FormalDifference> {
    match op {
        DiffOp::Add(e) => diff_add(e, d),
        DiffOp::Scale(r) => Ok(diff_scale(r, d)),
    }
}

pub fn diff_add(d: &FormalDifference, e: &FormalDifference) -> Result<FormalDifference> {
    FormalDifference::new(d.pos.add(&e.pos)?, d.neg.add(&e.neg)?)
}

/// `r (a - b) = ra - rb` for `r >= 0` and `|r| b - |r| a` otherwise.
pub fn diff_scale(r: &SignedScalar, d: &FormalDifference) -> FormalDifference {
    // unit magnitude keeps the representatives themselves
    let (p, n) = if r.mag().is_one() {
        (d.pos.clone(), d.neg.clone())
    } else {
        (d.pos.scale(r.mag()), d.neg.scale(r.mag()))
    };
    match r.sign() {
        Sign::Plus => FormalDifference { pos: p, neg: n },
        Sign::Minus => FormalDifference { pos: n, neg: p },
    }
}

fn check_instances(d1: &FormalDifference, d2: &FormalDifference, w: &Fraction) -> Result<()> {
    let inst = d1.pos.instance();
    for other in [d2.pos.instance(), w.instance()] {
        if other != inst {
            return Err(Error::InstanceMismatch(inst, other));
        }
    }
    Ok(())
}

/// `pos1 + neg2 + w = pos2 + neg1 + w` in F.
pub fn diff_eq(
    d1: &FormalDifference,
    d2: &FormalDifference,
    witness: &Fraction,
    budget: &Budget,
) -> Result<bool> {
    check_instances(d1, d2, witness)?;
    let l = d1.pos.add(&d2.neg)?.add(witness)?;
    let r = d2.pos.add(&d1.neg)?.add(witness)?;
    Ok(eq(&l, &r, budget)?.is_equal())
}

/// `pos1 + neg2 + g <= neg1 + pos2 + g` in the derived preorder.
pub fn triangle_leq(
    d1: &FormalDifference,
    d2: &FormalDifference,
    witness: &Fraction,
    budget: &Budget,
) -> Result<bool> {
    check_instances(d1, d2, witness)?;
    let l = d1.pos.add(&d2.neg)?.add(witness)?;
    let r = d1.neg.add(&d2.pos)?.add(witness)?;
    Ok(leq(&l, &r, budget)?.holds())
}
