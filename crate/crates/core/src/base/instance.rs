use std::fmt;
use std::str::FromStr;

use super::poly::{Polynomial, Word};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The three base semialgebras.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Instance {
    /// Nonnegative rationals, u = 2.
    QPlus,
    /// Commutative polynomials in n variables with positive constant term (or 0).
    PolyComm(u16),
    /// Noncommutative polynomials in n variables with positive constant term (or 0).
    PolyNc(u16),
}

impl Instance {
    pub fn n_vars(self) -> usize {
        match self {
            Instance::QPlus => 0,
            Instance::PolyComm(n) | Instance::PolyNc(n) => n as usize,
        }
    }

    pub fn commutative(self) -> bool {
        !matches!(self, Instance::PolyNc(n) if n >= 2)
    }

    /// Multiplicative cancellation holds, so cross-multiplication with t = 1
    /// decides fraction equality.
    pub fn cancellative(self) -> bool {
        true
    }

    pub fn zero(self) -> BaseElement {
        BaseElement {
            instance: self,
            poly: Polynomial::zero(),
        }
    }

    pub fn one(self) -> BaseElement {
        self.constant(Scalar::one())
    }

    pub fn constant(self, c: Scalar) -> BaseElement {
        BaseElement {
            instance: self,
            poly: Polynomial::constant(c),
        }
    }

    /// The fixed power universal element: 2 + 2x1 + ... + 2xn.
    pub fn pu(self) -> BaseElement {
        let two = Scalar::from_int(2);
        let mut terms = vec![(Word::unit(), two.clone())];
        for i in 1..=self.n_vars() as u16 {
            terms.push((Word::letter(i), two.clone()));
        }
        BaseElement {
            instance: self,
            poly: Polynomial::from_terms(terms),
        }
    }

    fn word_commutative(self) -> bool {
        matches!(self, Instance::PolyComm(_))
    }

    /// Membership predicate; returns the canonical payload (letters sorted for
    /// commutative instances).
    pub fn element(self, poly: Polynomial) -> Result<BaseElement> {
        let fail = |msg: String| Error::Membership {
            instance: self,
            msg,
        };
        if poly.max_letter() as usize > self.n_vars() {
            return Err(fail(format!(
                "variable x{} out of range for {} variables",
                poly.max_letter(),
                self.n_vars()
            )));
        }
        if !poly.is_zero() && poly.constant_term().is_zero() {
            return Err(fail(format!("{poly} has zero constant term")));
        }
        let poly = if self.word_commutative() {
            poly.commutative_form()
        } else {
            poly
        };
        Ok(BaseElement {
            instance: self,
            poly,
        })
    }

    /// Parse a polynomial literal (the inside of `{...}`).
    pub fn parse_element(self, text: &str, offset: usize) -> Result<BaseElement> {
        self.element(Polynomial::parse(text, offset)?)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::QPlus => write!(f, "qplus"),
            Instance::PolyComm(n) => write!(f, "polycomm:{n}"),
            Instance::PolyNc(n) => write!(f, "polync:{n}"),
        }
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Domain(format!(
                "unknown instance {s:?} (qplus | polycomm:n | polync:n)"
            ))
        };
        if s == "qplus" {
            return Ok(Instance::QPlus);
        }
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u16 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(Error::Domain("polynomial instances need n >= 1".into()));
        }
        match kind {
            "polycomm" => Ok(Instance::PolyComm(n)),
            "polync" => Ok(Instance::PolyNc(n)),
            _ => Err(bad()),
        }
    }
}

/// An element of a base semialgebra. QPlus elements are constant polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseElement {
    instance: Instance,
    poly: Polynomial,
}

impl BaseElement {
    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly == Polynomial::constant(Scalar::one())
    }

    /// Value of a QPlus element, or the constant term of a polynomial.
    pub fn constant_term(&self) -> Scalar {
        self.poly.constant_term()
    }

    fn same(&self, other: &BaseElement) -> Result<()> {
        if self.instance != other.instance {
            return Err(Error::InstanceMismatch(self.instance, other.instance));
        }
        Ok(())
    }

    // Results of the operations stay inside the instance: positive constant
    // terms are closed under + and *.
    fn wrap(&self, poly: Polynomial) -> BaseElement {
        BaseElement {
            instance: self.instance,
            poly,
        }
    }

    pub fn add(&self, other: &BaseElement) -> Result<BaseElement> {
        self.same(other)?;
        Ok(self.wrap(self.poly.add(&other.poly)))
    }

    pub fn mul(&self, other: &BaseElement) -> Result<BaseElement> {
        self.same(other)?;
        let comm = self.instance.word_commutative();
        Ok(self.wrap(self.poly.mul(&other.poly, comm)))
    }

    pub fn scale(&self, r: &Scalar) -> BaseElement {
        self.wrap(self.poly.scale(r))
    }

    pub fn pow(&self, k: u32) -> BaseElement {
        self.wrap(self.poly.pow(k, self.instance.word_commutative()))
    }

    /// The instance preorder: numeric for QPlus, coefficient-wise otherwise.
    pub fn leq(&self, other: &BaseElement) -> Result<bool> {
        self.same(other)?;
        Ok(self.poly.leq(&other.poly))
    }

    /// Evaluate at a point (empty for QPlus).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.poly.eval(point)
    }

    /// Split off the constant term: `self = c * monic` with the constant term
    /// of `monic` equal to 1. `None` if already monic or zero.
    pub fn monic_split(&self) -> Option<(Scalar, BaseElement)> {
        let c = self.constant_term();
        if c.is_zero() || c.is_one() {
            return None;
        }
        let inv = c.recip().expect("nonzero");
        Some((c, self.scale(&inv)))
    }

    /// `t` with `self = s * t`, if it lies in the instance.
    pub fn left_quotient(&self, s: &BaseElement) -> Option<BaseElement> {
        if self.instance != s.instance {
            return None;
        }
        let comm = self.instance.word_commutative();
        self.poly.left_quotient(&s.poly, comm).map(|p| self.wrap(p))
    }

    /// `t` with `self = t * s`, if it lies in the instance.
    pub fn right_quotient(&self, s: &BaseElement) -> Option<BaseElement> {
        if self.instance != s.instance {
            return None;
        }
        let comm = self.instance.word_commutative();
        self.poly
            .right_quotient(&s.poly, comm)
            .map(|p| self.wrap(p))
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

impl fmt::Debug for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.poly)
    }
}

impl serde::Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
