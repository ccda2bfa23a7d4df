//! The derived preorder on fractions: lessdot certificates, chains, and a
//! three-valued comparison.

mod prover;
mod pu;

use serde::{Deserialize, Serialize};

pub use pu::{pu_pre_lift, pu_witness, verify_pu_witness, PuWitness};

use crate::base::{BaseElement, Instance};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fraction::{eq, Fraction};
use crate::homext::{eval_fraction, shared_homs, MonotoneHom};
use crate::legality::eval_in_s;
use crate::parser::parse;

/// One summand `g * A * h` (lower side) against `g * B * h` (upper side).
#[derive(Clone, Debug, PartialEq)]
pub struct LessdotTerm {
    pub g: Fraction,
    pub a: BaseElement,
    pub b: BaseElement,
    pub h: Fraction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LessdotCertificate {
    pub terms: Vec<LessdotTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub from: Fraction,
    pub to: Fraction,
    pub cert: LessdotCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainCertificate {
    pub lower: Fraction,
    pub upper: Fraction,
    pub links: Vec<Link>,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum LeqVerdict {
    Holds(ChainCertificate),
    /// The hom gives the left side a strictly larger value.
    Fails(MonotoneHom),
    Unknown,
}

impl LeqVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            LeqVerdict::Holds(_) => "holds",
            LeqVerdict::Fails(_) => "fails",
            LeqVerdict::Unknown => "unknown",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, LeqVerdict::Holds(_))
    }
}

impl LessdotTerm {
    fn side(&self, upper: bool) -> Expr {
        let mid = if upper { &self.b } else { &self.a };
        Expr::mul(
            Expr::mul(self.g.rep().clone(), Expr::atom(mid.clone())),
            self.h.rep().clone(),
        )
    }
}

impl LessdotCertificate {
    /// `sum g_i A_i h_i` (or with `B_i` for the upper side).
    pub fn side(&self, upper: bool) -> Result<Expr> {
        Expr::sum(self.terms.iter().map(|t| t.side(upper)))
            .ok_or_else(|| Error::Verification("empty certificate".into()))
    }

    /// Do the side conditions `A_i <= B_i` hold?
    pub fn side_conditions(&self) -> Result<bool> {
        for t in &self.terms {
            if !t.a.leq(&t.b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn record(&self) -> CertRecord {
        CertRecord {
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord {
                    g: t.g.rep().render(),
                    a: t.a.to_string(),
                    b: t.b.to_string(),
                    h: t.h.rep().render(),
                })
                .collect(),
        }
    }

    pub fn from_record(r: &CertRecord, inst: Instance) -> Result<Self> {
        let terms = r
            .terms
            .iter()
            .map(|t| {
                Ok(LessdotTerm {
                    g: Fraction::parse(&t.g, inst)?,
                    a: inst.parse_element(&t.a, 0)?,
                    b: inst.parse_element(&t.b, 0)?,
                    h: Fraction::parse(&t.h, inst)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LessdotCertificate { terms })
    }
}

/// `a = sum g_i A_i h_i` and `b = sum g_i B_i h_i` (both checked with `eq`,
/// Unknown counting as failure) and `A_i <= B_i` for all `i`.
pub fn verify_lessdot(
    a: &Fraction,
    b: &Fraction,
    cert: &LessdotCertificate,
    budget: &Budget,
) -> Result<bool> {
    if cert.terms.is_empty() {
        return Ok(false);
    }
    let inst = a.instance();
    if b.instance() != inst {
        return Err(Error::InstanceMismatch(inst, b.instance()));
    }
    if !cert.side_conditions()? {
        return Ok(false);
    }
    let lower = Fraction::new(cert.side(false)?)?;
    let upper = Fraction::new(cert.side(true)?)?;
    Ok(eq(a, &lower, budget)?.is_equal() && eq(b, &upper, budget)?.is_equal())
}

/// Endpoints must match literally from link to link; each link must verify.
pub fn verify_chain(c: &ChainCertificate, budget: &Budget) -> Result<bool> {
    let Some(first) = c.links.first() else {
        return Ok(false);
    };
    if first.from.rep() != c.lower.rep() || c.links.last().unwrap().to.rep() != c.upper.rep() {
        return Ok(false);
    }
    for w in c.links.windows(2) {
        if w[0].to.rep() != w[1].from.rep() {
            return Ok(false);
        }
    }
    for l in &c.links {
        if !verify_lessdot(&l.from, &l.to, &l.cert, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Collapse a chain into one certificate `a + w <. b + w`, where `w` is the
/// sum of the intermediate points.
pub fn pad(c: &ChainCertificate) -> Result<(Fraction, LessdotCertificate)> {
    let inst = c.lower.instance();
    let mids = c.links.iter().skip(1).map(|l| l.from.rep().clone());
    let w = match Expr::sum(mids) {
        Some(e) => Fraction::new(e)?,
        None => Fraction::zero(inst),
    };
    let terms = c
        .links
        .iter()
        .flat_map(|l| l.cert.terms.iter().cloned())
        .collect();
    Ok((w, LessdotCertificate { terms }))
}

/// Check a padded certificate against the chain endpoints.
pub fn verify_padded(
    a: &Fraction,
    b: &Fraction,
    w: &Fraction,
    cert: &LessdotCertificate,
    budget: &Budget,
) -> Result<bool> {
    verify_lessdot(&a.add(w)?, &b.add(w)?, cert, budget)
}

/// Three-valued comparison `a <= b` in the derived preorder.
///
/// Tier 1: inverse-free normal forms compared in S. Tier 2: a goal-directed
/// certificate search, returned only after the chain verifies. Tier 3:
/// falsification by sampled homomorphisms.
pub fn leq(a: &Fraction, b: &Fraction, budget: &Budget) -> Result<LeqVerdict> {
    let inst = a.instance();
    if b.instance() != inst {
        return Err(Error::InstanceMismatch(inst, b.instance()));
    }
    let na = &a.normal_form()?.0;
    let nb = &b.normal_form()?.0;

    if na.is_inverse_free() && nb.is_inverse_free() {
        let (x, y) = (eval_in_s(na)?, eval_in_s(nb)?);
        if x.leq(&y)? {
            let cert = LessdotCertificate {
                terms: vec![LessdotTerm {
                    g: Fraction::one(inst),
                    a: x,
                    b: y,
                    h: Fraction::one(inst),
                }],
            };
            let chain = ChainCertificate {
                lower: a.clone(),
                upper: b.clone(),
                links: vec![Link {
                    from: a.clone(),
                    to: b.clone(),
                    cert,
                }],
            };
            return Ok(LeqVerdict::Holds(chain));
        }
    }

    if let Some(links) = prover::prove(na, nb, budget.chain_depth) {
        let chain = prover::to_chain(a, b, links)?;
        if verify_chain(&chain, budget)? {
            return Ok(LeqVerdict::Holds(chain));
        }
    }

    for h in shared_homs(inst, budget.samples, budget.seed).iter() {
        if eval_fraction(h, a)? > eval_fraction(h, b)? {
            return Ok(LeqVerdict::Fails(h.clone()));
        }
    }
    Ok(LeqVerdict::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub g: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRecord {
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub from: String,
    pub to: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub lower: String,
    pub upper: String,
    pub links: Vec<LinkRecord>,
}

impl ChainCertificate {
    pub fn record(&self) -> ChainRecord {
        ChainRecord {
            lower: self.lower.rep().render(),
            upper: self.upper.rep().render(),
            links: self
                .links
                .iter()
                .map(|l| LinkRecord {
                    from: l.from.rep().render(),
                    to: l.to.rep().render(),
                    terms: l.cert.record().terms,
                })
                .collect(),
        }
    }

    pub fn from_record(r: &ChainRecord, inst: Instance) -> Result<Self> {
        let links = r
            .links
            .iter()
            .map(|l| {
                Ok(Link {
                    from: Fraction::new(parse(&l.from, inst)?)?,
                    to: Fraction::new(parse(&l.to, inst)?)?,
                    cert: LessdotCertificate::from_record(
                        &CertRecord {
                            terms: l.terms.clone(),
                        },
                        inst,
                    )?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainCertificate {
            lower: Fraction::parse(&r.lower, inst)?,
            upper: Fraction::parse(&r.upper, inst)?,
            links,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Scalar;

    fn nc() -> Instance {
        Instance::PolyNc(1)
    }

    fn f(s: &str) -> Fraction {
        Fraction::parse(s, nc()).unwrap()
    }

    fn el(s: &str) -> BaseElement {
        nc().parse_element(s, 0).unwrap()
    }

    fn term(g: &str, a: &str, b: &str, h: &str) -> LessdotTerm {
        LessdotTerm {
            g: f(g),
            a: el(a),
            b: el(b),
            h: f(h),
        }
    }

    #[test]
    fn lessdot_examples() {
        let bud = Budget::default();
        let x = f("{1+x1}");
        let cert = LessdotCertificate {
            terms: vec![term("{1}", "1+x1", "1+x1", "{1}")],
        };
        assert!(verify_lessdot(&x, &x, &cert, &bud).unwrap());
        let y = f("{2+2x1}");
        let cert = LessdotCertificate {
            terms: vec![term("{1}", "1+x1", "2+2x1", "{1}")],
        };
        assert!(verify_lessdot(&x, &y, &cert, &bud).unwrap());
        let bad = LessdotCertificate {
            terms: vec![term("{1}", "2+2x1", "1+x1", "{1}")],
        };
        assert!(!verify_lessdot(&y, &x, &bad, &bud).unwrap());
    }

    #[test]
    fn zero_below_anything() {
        let a = f("({1+x1})^-1 + {2}");
        let cert = LessdotCertificate {
            terms: vec![LessdotTerm {
                g: a.clone(),
                a: nc().zero(),
                b: nc().one(),
                h: Fraction::one(nc()),
            }],
        };
        assert!(verify_lessdot(&Fraction::zero(nc()), &a, &cert, &Budget::default()).unwrap());
    }

    #[test]
    fn chain_endpoint_mismatch() {
        let x = f("{1+x1}");
        let y = f("{2+2x1}");
        let link = Link {
            from: x.clone(),
            to: y.clone(),
            cert: LessdotCertificate {
                terms: vec![term("{1}", "1+x1", "2+2x1", "{1}")],
            },
        };
        let ok = ChainCertificate {
            lower: x.clone(),
            upper: y.clone(),
            links: vec![link.clone()],
        };
        assert!(verify_chain(&ok, &Budget::default()).unwrap());
        let bad = ChainCertificate {
            lower: x.clone(),
            upper: y.clone(),
            links: vec![link.clone(), link],
        };
        assert!(!verify_chain(&bad, &Budget::default()).unwrap());
    }

    #[test]
    fn leq_examples() {
        let bud = Budget::default();
        assert!(leq(&f("{1+x1}"), &f("{2+2x1}"), &bud).unwrap().holds());
        match leq(&f("{2+x1 x1}"), &f("{1+2x1}"), &bud).unwrap() {
            LeqVerdict::Fails(h) => assert_eq!(h.point, vec![Scalar::zero()]),
            other => panic!("{other:?}"),
        }
        let a = f("({1+x1})^-1 + {3}");
        assert!(leq(&a, &a.clone(), &bud).unwrap().holds());
    }

    #[test]
    fn inverse_reverses_order() {
        let bud = Budget::default();
        let v = leq(&f("({2+2x1})^-1"), &f("({1+x1})^-1"), &bud).unwrap();
        match &v {
            LeqVerdict::Holds(c) => {
                assert!(verify_chain(c, &bud).unwrap());
                let (w, cert) = pad(c).unwrap();
                assert!(verify_padded(&c.lower, &c.upper, &w, &cert, &bud).unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            leq(&f("({1+x1})^-1"), &f("({2+2x1})^-1"), &bud).unwrap(),
            LeqVerdict::Fails(_)
        ));
    }

    #[test]
    fn record_round_trip() {
        let bud = Budget::default();
        let LeqVerdict::Holds(c) = leq(&f("{1+x1}"), &f("{2+2x1}"), &bud).unwrap() else {
            panic!()
        };
        let back = ChainCertificate::from_record(&c.record(), nc()).unwrap();
        assert!(verify_chain(&back, &bud).unwrap());
    }
}
