//! Power universality of `u` carried over from S to the fractions, with an
//! explicit exponent.

use serde::{Deserialize, Serialize};

use crate::base::{base_pu_witness, Scalar};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fraction::Fraction;
use crate::homext::{eval_fraction, sample_homs};
use crate::legality::{classify, eval_in_s, LegalityClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuWitness {
    /// Exponent `k` with `(lambda u)^k` dominating `x`.
    pub pre_lift: u32,
    /// `k0` with `u^k0 >= lambda^k` in S.
    pub lift: u32,
    /// `k0 + k`, a witness for plain `u`.
    pub total: u32,
}

const LIMIT: u32 = 4096;

/// Smallest `m` with `lambda^m >= target`.
fn log_ceil(lambda: &Scalar, target: &Scalar) -> Result<u32> {
    let mut p = Scalar::one();
    for m in 0..=LIMIT {
        if &p >= target {
            return Ok(m);
        }
        p = &p * lambda;
    }
    Err(Error::Domain(format!(
        "no power of {lambda} reaches {target}"
    )))
}

/// Exponent for `lambda u` by structural recursion on the representative.
pub fn pu_pre_lift(e: &Expr, lambda: &Scalar) -> Result<u32> {
    if lambda <= &Scalar::one() {
        return Err(Error::Domain("lambda must exceed 1".into()));
    }
    match classify(e) {
        LegalityClass::Illegal => return Err(Error::Illegal(e.render())),
        LegalityClass::Null => return Err(Error::Domain(format!("{} is zero", e.render()))),
        LegalityClass::NonNullLegal => {}
    }
    Ok(match e {
        Expr::Atom(x) => base_pu_witness(x)?,
        Expr::Add(a, b) => match (classify(a).is_null(), classify(b).is_null()) {
            (true, _) => pu_pre_lift(b, lambda)?,
            (_, true) => pu_pre_lift(a, lambda)?,
            _ => {
                let k = pu_pre_lift(a, lambda)?.max(pu_pre_lift(b, lambda)?);
                k + log_ceil(lambda, &Scalar::from_int(2))?
            }
        },
        Expr::Mul(a, b) => pu_pre_lift(a, lambda)? + pu_pre_lift(b, lambda)?,
        Expr::Scale(r, a) => {
            let inv = r.recip().expect("nonnull scale has r > 0");
            let big = if r > &inv { r.clone() } else { inv };
            log_ceil(lambda, &big)? + pu_pre_lift(a, lambda)?
        }
        Expr::Inv(a) => pu_pre_lift(a, lambda)?,
    })
}

/// A witness `k` for `u` against `x`, post-verified with `verify_pu_witness`.
pub fn pu_witness(x: &Fraction, lambda: &Scalar, budget: &Budget) -> Result<PuWitness> {
    let k = pu_pre_lift(x.rep(), lambda)?;
    let inst = x.instance();
    let target = inst.constant(lambda.pow(k));
    let u = inst.pu();
    let mut uk = inst.one();
    let mut lift = None;
    for k0 in 0..=LIMIT {
        if target.leq(&uk)? {
            lift = Some(k0);
            break;
        }
        uk = uk.mul(&u)?;
    }
    let lift = lift.ok_or_else(|| Error::Domain("lift exponent not found".into()))?;
    let w = PuWitness {
        pre_lift: k,
        lift,
        total: k + lift,
    };
    if !verify_pu_witness(x, w.total, budget)? {
        return Err(Error::Verification(format!(
            "exponent {} does not dominate {}",
            w.total,
            x.rep().render()
        )));
    }
    Ok(w)
}

/// `u^k x >= 1`, `x u^k >= 1` and `u^k >= x`: exactly when the normal form
/// of `x` is inverse-free, otherwise on every sampled hom.
pub fn verify_pu_witness(x: &Fraction, k: u32, budget: &Budget) -> Result<bool> {
    let inst = x.instance();
    let uk = inst.pu().pow(k);
    let nf = &x.normal_form()?.0;
    if nf.is_inverse_free() {
        let xs = eval_in_s(nf)?;
        let one = inst.one();
        return Ok(one.leq(&uk.mul(&xs)?)? && one.leq(&xs.mul(&uk)?)? && xs.leq(&uk)?);
    }
    let one = Scalar::one();
    for h in sample_homs(inst, budget.samples, budget.seed) {
        let hu = h.apply(&uk)?;
        let hx = eval_fraction(&h, x)?;
        if &hu * &hx < one || hx > hu {
            return Ok(false);
        }
    }
    Ok(true)
}
