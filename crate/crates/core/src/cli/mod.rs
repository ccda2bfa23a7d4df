//! Command-line front end. Exit codes: 0 definite positive, 1 definite
//! negative, 2 unknown or not found within budget, 3 usage or input error.

mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use report::{parse_element, verify_report, Report, SCHEMA};

use crate::base::{Instance, Scalar};
use crate::budget::{Budget, DEFAULT_SEED};
use crate::commoracle::{cf_eq, g_fraction};
use crate::error::{Error, Result};
use crate::fraction::{eq, EqEvidence, EqVerdict, Fraction};
use crate::homext::{eval_expr, eval_fraction, MonotoneHom};
use crate::legality::classify;
use crate::parser::parse;
use crate::preorder::{leq, pad, pu_witness, LeqVerdict};
use crate::vergleich::{
    check_condition_a, check_condition_d, construct_condition_d, d_epsilon, search_condition_b,
    search_condition_c, ConditionA, UniPoly,
};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "semifrac",
    version,
    about = "Fractions of preordered semialgebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// qplus | polycomm:n | polync:n
    #[arg(long, global = true, default_value = "polync:1")]
    pub instance: Instance,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Rewrite applications for the equality search.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub rewrites: usize,
    #[arg(long, global = true, default_value_t = 12)]
    pub chain_depth: usize,
    #[arg(long, global = true, default_value_t = 32)]
    pub m_max: u32,
    #[arg(long, global = true, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 4)]
    pub t_budget: u32,
    /// Disable the cross-multiplication shortcut on commutative instances.
    #[arg(long, global = true)]
    pub no_comm_oracle: bool,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

impl RunConfig {
    pub fn budget(&self) -> Result<Budget> {
        if self.rewrites == 0 || self.chain_depth == 0 || self.m_max == 0 || self.samples == 0 {
            return Err(Error::Domain("budgets must be positive".into()));
        }
        Ok(Budget {
            rewrites: self.rewrites,
            samples: self.samples,
            seed: self.seed,
            chain_depth: self.chain_depth,
            t_budget: self.t_budget,
            m_max: self.m_max,
            commutative_oracle: !self.no_comm_oracle,
        })
    }
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Parse and re-render an expression.
    Parse { expr: String },
    /// Illegal, Null or NonNullLegal.
    Classify { expr: String },
    /// Value under the point evaluation `x_i -> point[i]`.
    Eval {
        #[arg(long, value_delimiter = ',')]
        point: Vec<Scalar>,
        expr: String,
    },
    /// Equality of two fractions.
    Eq { a: String, b: String },
    /// The derived preorder `a <= b`.
    Leq { a: String, b: String },
    /// An exponent `k` with `u^k` dominating the fraction.
    PuWitness {
        expr: String,
        #[arg(long, default_value = "2")]
        lambda: Scalar,
    },
    /// Condition (a) on sampled homomorphisms.
    CheckA {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Smallest m for condition (b).
    SearchB {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        eps: Scalar,
    },
    /// A polynomial for condition (c).
    SearchC {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        r: Scalar,
        #[arg(long)]
        eps: Scalar,
    },
    /// Condition (d): check a given p, or construct one when --p is absent.
    CheckD {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        r: Scalar,
        #[arg(long)]
        eps: Scalar,
        #[arg(long)]
        p: Option<UniPoly>,
    },
    /// Compare eq with the classical fraction oracle (commutative only).
    OracleCompare { a: String, b: String },
    /// Re-verify the evidence in a report file.
    Replay { file: PathBuf },
}

/// Result of one command before it is wrapped in a report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: String,
    pub exit_code: i32,
    pub condition: Option<&'static str>,
    pub inputs: BTreeMap<String, String>,
    pub evidence: Value,
    /// Human-readable lines for stdout.
    pub summary: Vec<String>,
}

impl Outcome {
    fn new(verdict: &str, exit_code: i32) -> Self {
        Outcome {
            verdict: verdict.to_string(),
            exit_code,
            condition: None,
            inputs: BTreeMap::new(),
            evidence: Value::Null,
            summary: Vec::new(),
        }
    }

    fn input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.to_string(), v.to_string());
        self
    }

    fn evidence(mut self, v: Value) -> Self {
        self.evidence = v;
        self
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    fn condition(mut self, c: &'static str) -> Self {
        self.condition = Some(c);
        self
    }
}

fn hom_json(h: &MonotoneHom) -> Value {
    json!(h.point)
}

fn point_text(h: &MonotoneHom) -> String {
    let p: Vec<String> = h.point.iter().map(|s| s.to_string()).collect();
    format!("({})", p.join(", "))
}

/// Run one command. Errors are input errors (exit 3).
pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let inst = cfg.instance;
    let budget = cfg.budget()?;
    let frac = |s: &str| Fraction::parse(s, inst);
    let elem = |s: &str| parse_element(s, inst);
    Ok(match cmd {
        Command::Parse { expr } => {
            let e = parse(expr, inst)?;
            let r = e.render();
            Outcome::new("ok", EXIT_POSITIVE)
                .input("expr", expr)
                .evidence(json!({"rendered": r, "op_count": e.op_count()}))
                .line(r)
        }
        Command::Classify { expr } => {
            let class = classify(&parse(expr, inst)?);
            let code = if class.is_legal() {
                EXIT_POSITIVE
            } else {
                EXIT_NEGATIVE
            };
            Outcome::new(&format!("{class:?}"), code)
                .input("expr", expr)
                .evidence(json!({"class": class}))
                .line(format!("{class:?}"))
        }
        Command::Eval { point, expr } => {
            let h = MonotoneHom::new(inst, point.clone())?;
            let v = eval_expr(&h, &parse(expr, inst)?)?;
            Outcome::new("ok", EXIT_POSITIVE)
                .input("expr", expr)
                .input("point", point_text(&h))
                .evidence(json!({"point": hom_json(&h), "value": v.to_string()}))
                .line(v.to_string())
        }
        Command::Eq { a, b } => {
            let (fa, fb) = (frac(a)?, frac(b)?);
            let v = eq(&fa, &fb, &budget)?;
            let out = Outcome::new(v.name(), EXIT_POSITIVE)
                .input("a", a)
                .input("b", b);
            match v {
                EqVerdict::Equal(EqEvidence::Rewrites(steps)) => {
                    let recs: Vec<_> = steps.iter().map(|s| s.record()).collect();
                    out.evidence(json!({"kind": "rewrites", "steps": recs}))
                        .line(format!("equal: {} rewrite steps", steps.len()))
                }
                EqVerdict::Equal(EqEvidence::CrossMultiplication { lhs, rhs }) => out
                    .evidence(json!({
                        "kind": "cross-multiplication",
                        "lhs": lhs.record(),
                        "rhs": rhs.record(),
                    }))
                    .line(format!("equal: {lhs} ~ {rhs}")),
                EqVerdict::NotEqual(h) => {
                    let (va, vb) = (eval_fraction(&h, &fa)?, eval_fraction(&h, &fb)?);
                    Outcome {
                        exit_code: EXIT_NEGATIVE,
                        ..out
                    }
                    .evidence(json!({
                        "kind": "hom",
                        "point": hom_json(&h),
                        "lhs_value": va.to_string(),
                        "rhs_value": vb.to_string(),
                    }))
                    .line(format!("not equal at {}: {va} vs {vb}", point_text(&h)))
                }
                EqVerdict::Unknown => Outcome {
                    exit_code: EXIT_UNKNOWN,
                    ..out
                }
                .line("unknown"),
            }
        }
        Command::Leq { a, b } => {
            let (fa, fb) = (frac(a)?, frac(b)?);
            let v = leq(&fa, &fb, &budget)?;
            let out = Outcome::new(v.name(), EXIT_POSITIVE)
                .input("a", a)
                .input("b", b);
            match v {
                LeqVerdict::Holds(chain) => {
                    let (w, cert) = pad(&chain)?;
                    out.evidence(json!({
                        "kind": "chain",
                        "chain": chain.record(),
                        "padded": {"w": w.rep().render(), "terms": cert.record().terms},
                    }))
                    .line(format!("holds: chain of {} link(s)", chain.links.len()))
                }
                LeqVerdict::Fails(h) => {
                    let (va, vb) = (eval_fraction(&h, &fa)?, eval_fraction(&h, &fb)?);
                    Outcome {
                        exit_code: EXIT_NEGATIVE,
                        ..out
                    }
                    .evidence(json!({
                        "kind": "hom",
                        "point": hom_json(&h),
                        "lhs_value": va.to_string(),
                        "rhs_value": vb.to_string(),
                    }))
                    .line(format!("fails at {}: {va} > {vb}", point_text(&h)))
                }
                LeqVerdict::Unknown => Outcome {
                    exit_code: EXIT_UNKNOWN,
                    ..out
                }
                .line("unknown"),
            }
        }
        Command::PuWitness { expr, lambda } => {
            let w = pu_witness(&frac(expr)?, lambda, &budget)?;
            Outcome::new("found", EXIT_POSITIVE)
                .input("expr", expr)
                .input("lambda", lambda)
                .evidence(serde_json::to_value(&w).expect("plain struct"))
                .line(format!(
                    "k = {} (pre-lift {}, lift {})",
                    w.total, w.pre_lift, w.lift
                ))
        }
        Command::CheckA { x, y } => {
            let (ex, ey) = (elem(x)?, elem(y)?);
            let out = Outcome::new("pass", EXIT_POSITIVE)
                .condition("a")
                .input("x", &ex)
                .input("y", &ey);
            match check_condition_a(&ex, &ey, budget.samples, budget.seed)? {
                ConditionA::Pass { points } => out
                    .evidence(json!({"points": points}))
                    .line(format!("pass on {points} sampled point(s)")),
                ConditionA::Counterexample(h) => {
                    let (vx, vy) = (h.apply(&ex)?, h.apply(&ey)?);
                    Outcome {
                        verdict: "counterexample".into(),
                        exit_code: EXIT_NEGATIVE,
                        ..out
                    }
                    .evidence(json!({
                        "point": hom_json(&h),
                        "x_value": vx.to_string(),
                        "y_value": vy.to_string(),
                    }))
                    .line(format!("counterexample at {}: {vx} < {vy}", point_text(&h)))
                }
            }
        }
        Command::SearchB { x, y, eps } => {
            let (ex, ey) = (elem(x)?, elem(y)?);
            let out = Outcome::new("found", EXIT_POSITIVE)
                .condition("b")
                .input("x", &ex)
                .input("y", &ey)
                .input("eps", eps);
            match search_condition_b(&ex, &ey, eps, budget.m_max)? {
                Some(b) => out
                    .evidence(json!({"m": b.m, "lhs": b.lhs.to_string()}))
                    .line(format!("m = {}", b.m)),
                None => {
                    // (a) passing while (b) is missing is no refutation
                    let a = check_condition_a(&ex, &ey, budget.samples, budget.seed)?.passed();
                    Outcome {
                        verdict: if a { "inconclusive" } else { "not-found" }.into(),
                        exit_code: EXIT_UNKNOWN,
                        ..out
                    }
                    .evidence(json!({"condition_a": if a { "pass" } else { "counterexample" }}))
                    .line(format!("no m <= {} found", budget.m_max))
                }
            }
        }
        Command::SearchC { x, y, r, eps } => {
            let (ex, ey) = (elem(x)?, elem(y)?);
            let out = Outcome::new("found", EXIT_POSITIVE)
                .condition("c")
                .input("x", &ex)
                .input("y", &ey)
                .input("r", r)
                .input("eps", eps);
            match search_condition_c(&ex, &ey, r, eps, &budget)? {
                Some(c) => out
                    .evidence(json!({
                        "p": c.p,
                        "route": c.route,
                        "p_at_r": c.p_at_r.to_string(),
                    }))
                    .line(format!("p = {}, p({r}) = {}", c.p, c.p_at_r)),
                None => Outcome {
                    verdict: "not-found".into(),
                    exit_code: EXIT_UNKNOWN,
                    ..out
                }
                .line("no polynomial found within budget"),
            }
        }
        Command::CheckD { x, y, r, eps, p } => {
            let (ex, ey) = (elem(x)?, elem(y)?);
            let out = Outcome::new("pass", EXIT_POSITIVE)
                .condition("d")
                .input("x", &ex)
                .input("y", &ey)
                .input("r", r)
                .input("eps", eps);
            match p {
                Some(p) => {
                    let ok = check_condition_d(&ex, &ey, p, r, eps)?;
                    let out = out.input("p", p).evidence(json!({
                        "mode": "check",
                        "p": p,
                        "p_at_r": p.eval(r).to_string(),
                    }));
                    if ok {
                        out.line(format!("pass: p({r}) = {}", p.eval(r)))
                    } else {
                        Outcome {
                            verdict: "fail".into(),
                            exit_code: EXIT_NEGATIVE,
                            ..out
                        }
                        .line("fail")
                    }
                }
                None => {
                    let (k, e) = d_epsilon(&ex, r, eps)?;
                    match search_condition_c(&ex, &ey, r, &e, &budget)? {
                        Some(c) => {
                            let (_, p) = construct_condition_d(&ex, &c.p)?;
                            let ok = check_condition_d(&ex, &ey, &p, r, eps)?;
                            let out = out.evidence(json!({
                                "mode": "construct",
                                "k": k,
                                "eps_prime": e.to_string(),
                                "p0": c.p,
                                "p": p,
                                "p_at_r": p.eval(r).to_string(),
                            }));
                            if ok {
                                out.line(format!("p = {p}, p({r}) = {}", p.eval(r)))
                            } else {
                                Outcome {
                                    verdict: "fail".into(),
                                    exit_code: EXIT_NEGATIVE,
                                    ..out
                                }
                                .line(format!("constructed p = {p} does not pass"))
                            }
                        }
                        None => Outcome {
                            verdict: "not-found".into(),
                            exit_code: EXIT_UNKNOWN,
                            ..out
                        }
                        .line("no p0 found within budget"),
                    }
                }
            }
        }
        Command::OracleCompare { a, b } => {
            if !inst.commutative() {
                return Err(Error::Domain(format!("{inst} is not commutative")));
            }
            let (fa, fb) = (frac(a)?, frac(b)?);
            let (ga, gb) = (g_fraction(&fa)?, g_fraction(&fb)?);
            let cf = cf_eq(&ga, &gb)?;
            let v = eq(&fa, &fb, &budget)?;
            let (verdict, code) = match (&v, cf) {
                (EqVerdict::Unknown, _) => ("inconclusive", EXIT_UNKNOWN),
                (EqVerdict::Equal(_), true) | (EqVerdict::NotEqual(_), false) => {
                    ("agree", EXIT_POSITIVE)
                }
                _ => ("disagree", EXIT_NEGATIVE),
            };
            Outcome::new(verdict, code)
                .input("a", a)
                .input("b", b)
                .evidence(json!({
                    "eq": v.name(),
                    "cf_eq": cf,
                    "agree": verdict == "agree",
                    "g_lhs": ga.record(),
                    "g_rhs": gb.record(),
                }))
                .line(format!("eq: {}, cross-multiplication: {cf}", v.name()))
        }
        Command::Replay { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Domain(format!("{}: {e}", file.display())))?;
            let r: Report = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("{}: {e}", file.display())))?;
            let ok = verify_report(&r)?;
            let (v, code) = if ok {
                ("verified", EXIT_POSITIVE)
            } else {
                ("rejected", EXIT_NEGATIVE)
            };
            Outcome::new(v, code)
                .input("file", file.display())
                .evidence(json!({"command": r.command, "verdict": r.verdict}))
                .line(format!("{} {}: {v}", r.command, r.verdict))
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Parse { .. } => "parse",
        Command::Classify { .. } => "classify",
        Command::Eval { .. } => "eval",
        Command::Eq { .. } => "eq",
        Command::Leq { .. } => "leq",
        Command::PuWitness { .. } => "pu-witness",
        Command::CheckA { .. } => "check-a",
        Command::SearchB { .. } => "search-b",
        Command::SearchC { .. } => "search-c",
        Command::CheckD { .. } => "check-d",
        Command::OracleCompare { .. } => "oracle-compare",
        Command::Replay { .. } => "replay",
    }
}

/// Execute and wrap into a report.
pub fn run_report(cmd: &Command, cfg: &RunConfig) -> Result<(Report, Vec<String>)> {
    let start = Instant::now();
    let out = execute(cmd, cfg)?;
    let report = Report {
        schema: SCHEMA,
        command: command_name(cmd).to_string(),
        condition: out.condition.map(str::to_string),
        instance: cfg.instance,
        inputs: out.inputs,
        verdict: out.verdict,
        exit_code: out.exit_code,
        evidence: out.evidence,
        seed: cfg.seed,
        budgets: cfg.budget()?,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    Ok((report, out.summary))
}

/// Parse arguments, run, print, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_POSITIVE
            };
            let _ = e.print();
            return code;
        }
    };
    match run_report(&cli.command, &cli.config) {
        Ok((report, lines)) => {
            println!("verdict: {}", report.verdict);
            for l in lines {
                println!("{l}");
            }
            if let Some(path) = &cli.config.report {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
