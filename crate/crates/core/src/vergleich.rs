//! Desk-scale checks and searches for the four equivalent comparison
//! conditions (a)-(d), plus the constructive steps between them.
//!
//! Every positive result carries evidence that the matching `verify_*`
//! function re-checks from scratch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::base::{base_unit_exponent, BaseElement, Scalar};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::homext::{sample_homs, MonotoneHom};

/// Polynomial in one variable `X` with nonnegative rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c X^j`
    pub fn monomial(c: Scalar, j: usize) -> Self {
        let mut v = vec![Scalar::zero(); j + 1];
        v[j] = c;
        UniPoly::new(v)
    }

    /// `sum_{j<=m} eps^{j+1} X^j`, the family behind condition (b).
    pub fn geometric(eps: &Scalar, m: u32) -> Self {
        UniPoly::new((0..=m).map(|j| eps.pow(j + 1)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(v)
    }

    pub fn eval(&self, r: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * r) + c)
    }

    /// `p(s) = sum c_j s^j` in S.
    pub fn eval_at(&self, s: &BaseElement) -> Result<BaseElement> {
        let inst = s.instance();
        let mut acc = inst.zero();
        let mut pw = inst.one();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&pw.scale(c))?;
            }
            pw = pw.mul(s)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "X")?,
                _ => write!(f, "{c}X")?,
            }
            if j > 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    /// Accepts sums of `c`, `cX`, `X^j`, `c X^j`, `c*X^j`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in polynomial {s:?}"),
        };
        let mut p = UniPoly::zero();
        for term in s.split('+') {
            let t = term.trim();
            if t.is_empty() {
                return Err(bad("empty term"));
            }
            if t.starts_with('-') {
                return Err(bad("negative coefficient"));
            }
            let (c, j) = match t.find('X') {
                None => (t.parse::<Scalar>()?, 0),
                Some(i) => {
                    let head = t[..i].trim().trim_end_matches('*').trim();
                    let c = if head.is_empty() {
                        Scalar::one()
                    } else {
                        head.parse()?
                    };
                    let tail = t[i + 1..].trim();
                    let j = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.trim().parse::<usize>().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    (c, j)
                }
            };
            p = p.add(&UniPoly::monomial(c, j));
        }
        Ok(p)
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn nonzero_pair(x: &BaseElement, y: &BaseElement) -> Result<()> {
    if x.instance() != y.instance() {
        return Err(Error::InstanceMismatch(x.instance(), y.instance()));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::Domain("x and y must be nonzero".into()));
    }
    Ok(())
}

fn positive(eps: &Scalar) -> Result<()> {
    if eps.is_zero() {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConditionA {
    /// No sampled hom violates `f(x) >= f(y)`.
    Pass {
        points: usize,
    },
    Counterexample(MonotoneHom),
}

impl ConditionA {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionA::Pass { .. })
    }
}

/// `f(x) >= f(y)` on `samples` sampled homs. A necessary-condition check.
pub fn check_condition_a(
    x: &BaseElement,
    y: &BaseElement,
    samples: usize,
    seed: u64,
) -> Result<ConditionA> {
    nonzero_pair(x, y)?;
    let homs = sample_homs(x.instance(), samples, seed);
    for h in &homs {
        if h.apply(x)? < h.apply(y)? {
            return Ok(ConditionA::Counterexample(h.clone()));
        }
    }
    Ok(ConditionA::Pass { points: homs.len() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionB {
    pub epsilon: Scalar,
    pub m: u32,
    /// `x + sum_{j<=m} eps^{j+1} u^j`, computed in S.
    pub lhs: BaseElement,
}

fn b_lhs(x: &BaseElement, eps: &Scalar, m: u32) -> Result<BaseElement> {
    x.add(&UniPoly::geometric(eps, m).eval_at(&x.instance().pu())?)
}

/// Smallest `m <= m_max` with `x + sum_{j<=m} eps^{j+1} u^j >= y` in S.
pub fn search_condition_b(
    x: &BaseElement,
    y: &BaseElement,
    eps: &Scalar,
    m_max: u32,
) -> Result<Option<ConditionB>> {
    nonzero_pair(x, y)?;
    positive(eps)?;
    let u = x.instance().pu();
    let mut lhs = x.clone();
    let mut term = eps.clone(); // eps^{j+1}
    let mut uj = x.instance().one();
    for m in 0..=m_max {
        lhs = lhs.add(&uj.scale(&term))?;
        if y.leq(&lhs)? {
            return Ok(Some(ConditionB {
                epsilon: eps.clone(),
                m,
                lhs,
            }));
        }
        term = &term * eps;
        uj = uj.mul(&u)?;
    }
    Ok(None)
}

pub fn verify_condition_b(x: &BaseElement, y: &BaseElement, eps: &Scalar, m: u32) -> Result<bool> {
    nonzero_pair(x, y)?;
    positive(eps)?;
    y.leq(&b_lhs(x, eps, m)?)
}

/// Run the condition (b) search at every `eps0 / 2^k`, `k = 0..=steps`.
/// Condition (b) quantifies over all positive epsilon; a single success at
/// one epsilon says nothing about (a).
pub fn search_condition_b_schedule(
    x: &BaseElement,
    y: &BaseElement,
    eps0: &Scalar,
    steps: u32,
    m_max: u32,
) -> Result<Option<Vec<ConditionB>>> {
    let half = Scalar::new(1, 2)?;
    let mut eps = eps0.clone();
    let mut out = Vec::new();
    for _ in 0..=steps {
        match search_condition_b(x, y, &eps, m_max)? {
            Some(b) => out.push(b),
            None => return Ok(None),
        }
        eps = &eps * &half;
    }
    Ok(Some(out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CRoute {
    /// `y <= x` already, so the constant `eps` works.
    Dominated,
    /// The (b) family at a shrunk epsilon.
    Shrunk { eps_prime: Scalar, m: u32 },
    /// A single monomial `c X^j` with the least feasible `c`.
    Monomial { degree: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionC {
    pub p: UniPoly,
    pub route: CRoute,
    pub p_at_r: Scalar,
}

/// Steps of the halving schedule for the shrunk epsilon.
pub const SHRINK_STEPS: u32 = 32;

/// Largest `1/2^t`, `t <= SHRINK_STEPS`, with `sum_{j<=m_max} e^{j+1} r^j <= eps`.
pub fn shrink_epsilon(r: &Scalar, eps: &Scalar, m_max: u32) -> Result<Option<Scalar>> {
    let half = Scalar::new(1, 2)?;
    let mut e = Scalar::one();
    for _ in 0..=SHRINK_STEPS {
        if &UniPoly::geometric(&e, m_max).eval(r) <= eps {
            return Ok(Some(e));
        }
        e = &e * &half;
    }
    Ok(None)
}

/// Least `c` with `x + c u^j >= y` coefficient-wise, if one exists.
fn least_monomial_coeff(x: &BaseElement, y: &BaseElement, uj: &BaseElement) -> Option<Scalar> {
    let mut c = Scalar::zero();
    for (w, yw) in y.poly().terms() {
        let xw = x.poly().coeff(w);
        if let Some(gap) = yw.checked_sub(&xw) {
            if gap.is_zero() {
                continue;
            }
            let uw = uj.poly().coeff(w);
            if uw.is_zero() {
                return None;
            }
            let need = &gap / &uw;
            if need > c {
                c = need;
            }
        }
    }
    Some(c)
}

/// A polynomial `p` with `p(r) <= eps` and `x + p(u) >= y` in S.
///
/// Tries, in order: the constant `eps` when `y <= x`; the (b) family at the
/// shrunk epsilon; single monomials `c X^j` for `j <= m_max`.
pub fn search_condition_c(
    x: &BaseElement,
    y: &BaseElement,
    r: &Scalar,
    eps: &Scalar,
    budget: &Budget,
) -> Result<Option<ConditionC>> {
    nonzero_pair(x, y)?;
    positive(eps)?;
    let found = |p: UniPoly, route: CRoute| {
        let p_at_r = p.eval(r);
        Some(ConditionC { p, route, p_at_r })
    };
    if y.leq(x)? {
        return Ok(found(UniPoly::constant(eps.clone()), CRoute::Dominated));
    }
    if let Some(e) = shrink_epsilon(r, eps, budget.m_max)? {
        if let Some(b) = search_condition_b(x, y, &e, budget.m_max)? {
            let p = UniPoly::geometric(&e, b.m);
            return Ok(found(
                p,
                CRoute::Shrunk {
                    eps_prime: e,
                    m: b.m,
                },
            ));
        }
    }
    let u = x.instance().pu();
    let mut uj = x.instance().one();
    for j in 0..=budget.m_max {
        if let Some(c) = least_monomial_coeff(x, y, &uj) {
            if &c * &r.pow(j) <= *eps {
                let p = UniPoly::monomial(c, j as usize);
                return Ok(found(p, CRoute::Monomial { degree: j }));
            }
        }
        uj = uj.mul(&u)?;
    }
    Ok(None)
}

pub fn verify_condition_c(
    x: &BaseElement,
    y: &BaseElement,
    r: &Scalar,
    eps: &Scalar,
    p: &UniPoly,
) -> Result<bool> {
    nonzero_pair(x, y)?;
    Ok(&p.eval(r) <= eps && y.leq(&x.add(&p.eval_at(&x.instance().pu())?)?)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionD {
    /// Smallest `k` with `u^k x >= 1`.
    pub k: u32,
    pub eps_prime: Scalar,
    pub p0: UniPoly,
    pub p: UniPoly,
}

/// `eps / r^k`, the target for the inner condition (c) run (just `eps`
/// when `r = 0`).
pub fn d_epsilon(x: &BaseElement, r: &Scalar, eps: &Scalar) -> Result<(u32, Scalar)> {
    let k = base_unit_exponent(x)?;
    let e = match r.pow(k).recip() {
        Some(inv) => eps * &inv,
        None => eps.clone(),
    };
    Ok((k, e))
}

/// `p = 1 + p0 X^k` from a given `p0`.
pub fn construct_condition_d(x: &BaseElement, p0: &UniPoly) -> Result<(u32, UniPoly)> {
    let k = base_unit_exponent(x)?;
    Ok((
        k,
        UniPoly::constant(Scalar::one()).add(&p0.shift(k as usize)),
    ))
}

/// Full construction: condition (c) at `eps / r^k`, then `1 + p0 X^k`.
pub fn derive_condition_d(
    x: &BaseElement,
    y: &BaseElement,
    r: &Scalar,
    eps: &Scalar,
    budget: &Budget,
) -> Result<Option<ConditionD>> {
    nonzero_pair(x, y)?;
    positive(eps)?;
    let (k, e) = d_epsilon(x, r, eps)?;
    let Some(c) = search_condition_c(x, y, r, &e, budget)? else {
        return Ok(None);
    };
    let (_, p) = construct_condition_d(x, &c.p)?;
    Ok(Some(ConditionD {
        k,
        eps_prime: e,
        p0: c.p,
        p,
    }))
}

/// `p(r) <= 1 + eps` exactly and `p(u) * x >= y` in S.
pub fn check_condition_d(
    x: &BaseElement,
    y: &BaseElement,
    p: &UniPoly,
    r: &Scalar,
    eps: &Scalar,
) -> Result<bool> {
    nonzero_pair(x, y)?;
    let bound = &Scalar::one() + eps;
    if p.eval(r) > bound {
        return Ok(false);
    }
    let lhs = p.eval_at(&x.instance().pu())?.mul(x)?;
    y.leq(&lhs)
}
