//! The JSON report written by every command, and its replay.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::base::{BaseElement, Instance, Scalar};
use crate::budget::Budget;
use crate::commoracle::{cf_eq, g_fraction, CommFractionRecord};
use crate::error::{Error, Result};
use crate::fraction::{replay, Fraction, RewriteStep, StepRecord};
use crate::homext::{eval_fraction, MonotoneHom};
use crate::legality::classify;
use crate::parser::parse;
use crate::preorder::{verify_chain, verify_pu_witness, ChainCertificate, ChainRecord};
use crate::vergleich::{
    check_condition_a, check_condition_d, verify_condition_b, verify_condition_c, UniPoly,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// Which comparison condition a vergleich command is about.
    pub condition: Option<String>,
    pub instance: Instance,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    pub exit_code: i32,
    pub evidence: Value,
    pub seed: u64,
    pub budgets: Budget,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn input(&self, key: &str) -> Result<&str> {
        self.inputs
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Domain(format!("report has no input {key:?}")))
    }

    fn frac(&self, key: &str) -> Result<Fraction> {
        Fraction::parse(self.input(key)?, self.instance)
    }

    fn elem(&self, key: &str) -> Result<BaseElement> {
        parse_element(self.input(key)?, self.instance)
    }

    fn scalar(&self, key: &str) -> Result<Scalar> {
        self.input(key)?.parse()
    }

    fn ev<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<T> {
        let v = self
            .evidence
            .get(key)
            .ok_or_else(|| Error::Domain(format!("evidence has no field {key:?}")))?;
        serde_json::from_value(v.clone()).map_err(|e| Error::Domain(format!("evidence {key}: {e}")))
    }

    fn point(&self) -> Result<MonotoneHom> {
        MonotoneHom::new(self.instance, self.ev("point")?)
    }
}

/// Accepts `2 + x1 x1` as well as the braced atom form `{2 + x1 x1}`.
pub fn parse_element(text: &str, inst: Instance) -> Result<BaseElement> {
    let t = text.trim();
    let (inner, offset) = match t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        Some(inner) => (inner, 1),
        None => (t, 0),
    };
    inst.parse_element(inner, offset)
}

/// Re-check the evidence in a report from its inputs alone.
///
/// Positive verdicts replay their certificate; counterexamples are
/// re-evaluated; verdicts without evidence (unknown, not found) replay
/// trivially.
pub fn verify_report(r: &Report) -> Result<bool> {
    if r.schema != SCHEMA {
        return Err(Error::Domain(format!("unsupported schema {}", r.schema)));
    }
    let b = &r.budgets;
    Ok(match (r.command.as_str(), r.verdict.as_str()) {
        ("parse", _) => {
            parse(r.input("expr")?, r.instance)?.render() == r.ev::<String>("rendered")?
        }
        ("classify", v) => {
            let class = classify(&parse(r.input("expr")?, r.instance)?);
            format!("{class:?}") == v
        }
        ("eval", _) => {
            let h = r.point()?;
            let e = parse(r.input("expr")?, r.instance)?;
            crate::homext::eval_expr(&h, &e)?.to_string() == r.ev::<String>("value")?
        }
        ("eq", "equal") => {
            let (a, c) = (r.frac("a")?, r.frac("b")?);
            match r.ev::<String>("kind")?.as_str() {
                "rewrites" => {
                    let steps = r
                        .ev::<Vec<StepRecord>>("steps")?
                        .iter()
                        .map(|s| RewriteStep::from_record(s, r.instance))
                        .collect::<Result<Vec<_>>>()?;
                    replay(a.rep(), &steps)? == *c.rep()
                }
                "cross-multiplication" => {
                    let (ga, gc) = (g_fraction(&a)?, g_fraction(&c)?);
                    let (la, lc): (CommFractionRecord, CommFractionRecord) =
                        (r.ev("lhs")?, r.ev("rhs")?);
                    ga.record() == la && gc.record() == lc && cf_eq(&ga, &gc)?
                }
                _ => false,
            }
        }
        ("eq", "not-equal") => {
            let h = r.point()?;
            eval_fraction(&h, &r.frac("a")?)? != eval_fraction(&h, &r.frac("b")?)?
        }
        ("leq", "holds") => {
            let chain = ChainCertificate::from_record(&r.ev::<ChainRecord>("chain")?, r.instance)?;
            chain.lower.rep() == r.frac("a")?.rep()
                && chain.upper.rep() == r.frac("b")?.rep()
                && verify_chain(&chain, b)?
        }
        ("leq", "fails") => {
            let h = r.point()?;
            eval_fraction(&h, &r.frac("a")?)? > eval_fraction(&h, &r.frac("b")?)?
        }
        ("pu-witness", "found") => {
            let total: u32 = r.ev("total")?;
            verify_pu_witness(&r.frac("expr")?, total, b)?
        }
        ("check-a", "pass") => {
            check_condition_a(&r.elem("x")?, &r.elem("y")?, b.samples, b.seed)?.passed()
        }
        ("check-a", "counterexample") => {
            let h = r.point()?;
            h.apply(&r.elem("x")?)? < h.apply(&r.elem("y")?)?
        }
        ("search-b", "found") => {
            let m: u32 = r.ev("m")?;
            verify_condition_b(&r.elem("x")?, &r.elem("y")?, &r.scalar("eps")?, m)?
        }
        ("search-c", "found") => {
            let p: UniPoly = r.ev("p")?;
            verify_condition_c(
                &r.elem("x")?,
                &r.elem("y")?,
                &r.scalar("r")?,
                &r.scalar("eps")?,
                &p,
            )?
        }
        ("check-d", v @ ("pass" | "fail")) => {
            let p: UniPoly = r.ev("p")?;
            let ok = check_condition_d(
                &r.elem("x")?,
                &r.elem("y")?,
                &p,
                &r.scalar("r")?,
                &r.scalar("eps")?,
            )?;
            ok == (v == "pass")
        }
        ("oracle-compare", v @ ("agree" | "disagree")) => {
            let (a, c) = (r.frac("a")?, r.frac("b")?);
            let cf = cf_eq(&g_fraction(&a)?, &g_fraction(&c)?)?;
            cf == r.ev::<bool>("cf_eq")? && (v == "agree") == r.ev::<bool>("agree")?
        }
        // nothing was claimed
        (_, "unknown" | "not-found" | "inconclusive") => true,
        (cmd, v) => {
            return Err(Error::Domain(format!(
                "cannot replay {cmd} with verdict {v}"
            )));
        }
    })
}
