//! Exact scalars, polynomials and the three base semialgebra instances.

mod instance;
mod poly;
mod scalar;

pub use instance::{BaseElement, Instance};
pub use poly::{Polynomial, Word};
pub use scalar::Scalar;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseOp {
    Add,
    Mul,
}

pub fn base_op(kind: BaseOp, lhs: &BaseElement, rhs: &BaseElement) -> Result<BaseElement> {
    match kind {
        BaseOp::Add => lhs.add(rhs),
        BaseOp::Mul => lhs.mul(rhs),
    }
}

pub fn base_scale(r: &Scalar, x: &BaseElement) -> BaseElement {
    x.scale(r)
}

pub fn base_leq(a: &BaseElement, b: &BaseElement) -> Result<bool> {
    a.leq(b)
}

/// Upper limit on the exponent search; far above anything reachable with
/// literals typed by hand.
const PU_LIMIT: u32 = 4096;

/// A `k` with `u^k x >= 1`, `x u^k >= 1` and `u^k >= x`, checked exactly.
/// Returns the smallest such `k`.
pub fn base_pu_witness(x: &BaseElement) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::Domain("power universality witness of zero".into()));
    }
    let inst = x.instance();
    let u = inst.pu();
    let one = inst.one();
    let mut uk = inst.one();
    for k in 0..=PU_LIMIT {
        if one.leq(&uk.mul(x)?)? && one.leq(&x.mul(&uk)?)? && x.leq(&uk)? {
            return Ok(k);
        }
        uk = uk.mul(&u)?;
    }
    Err(Error::Domain(format!(
        "no witness below {PU_LIMIT} for {x}"
    )))
}

/// Smallest `k` with `u^k x >= 1` only.
pub fn base_unit_exponent(x: &BaseElement) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::Domain("exponent of zero".into()));
    }
    let inst = x.instance();
    let u = inst.pu();
    let one = inst.one();
    let mut uk = inst.one();
    for k in 0..=PU_LIMIT {
        if one.leq(&uk.mul(x)?)? {
            return Ok(k);
        }
        uk = uk.mul(&u)?;
    }
    Err(Error::Domain(format!(
        "no exponent below {PU_LIMIT} for {x}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(inst: Instance, s: &str) -> BaseElement {
        inst.parse_element(s, 0).unwrap()
    }

    #[test]
    fn qplus_arithmetic() {
        let q = Instance::QPlus;
        let s = base_op(BaseOp::Add, &el(q, "2/3"), &el(q, "1/3")).unwrap();
        assert_eq!(s, q.one());
        assert!(q.parse_element("x1", 0).is_err());
    }

    #[test]
    fn square_of_pu() {
        let nc = Instance::PolyNc(1);
        let u = el(nc, "2 + 2x1");
        assert_eq!(u, nc.pu());
        let sq = base_op(BaseOp::Mul, &u, &u).unwrap();
        assert_eq!(sq, el(nc, "4 + 8x1 + 4x1 x1"));
    }

    #[test]
    fn mismatch_is_error() {
        let a = Instance::PolyNc(1).one();
        let b = Instance::PolyComm(1).one();
        assert!(matches!(
            base_op(BaseOp::Add, &a, &b),
            Err(Error::InstanceMismatch(..))
        ));
        assert!(base_leq(&a, &b).is_err());
    }

    #[test]
    fn membership() {
        assert!(Instance::PolyNc(1).parse_element("x1", 0).is_err());
        assert!(Instance::PolyNc(1).parse_element("1 + x2", 0).is_err());
        assert!(Instance::PolyNc(2).parse_element("0", 0).unwrap().is_zero());
        // commutative instance canonicalizes letter order
        let c = Instance::PolyComm(2);
        assert_eq!(el(c, "1 + x2 x1"), el(c, "1 + x1 x2"));
    }

    #[test]
    fn leq_examples() {
        let nc = Instance::PolyNc(1);
        assert!(base_leq(&el(nc, "1 + x1"), &el(nc, "2 + 2x1")).unwrap());
        assert!(!base_leq(&el(nc, "2 + x1 x1"), &el(nc, "1 + 2x1")).unwrap());
    }

    #[test]
    fn pu_witness_examples() {
        let nc = Instance::PolyNc(1);
        assert_eq!(base_pu_witness(&el(nc, "2 + x1 x1")).unwrap(), 2);
        assert_eq!(base_pu_witness(&nc.one()).unwrap(), 0);
        assert_eq!(base_pu_witness(&el(Instance::QPlus, "8")).unwrap(), 3);
        assert!(base_pu_witness(&nc.zero()).is_err());
    }
}
