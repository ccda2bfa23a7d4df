//! Goal-directed construction of lessdot chains between normal forms.
//!
//! Candidate chains are built on plain expressions and only turned into
//! certificates at the end; every chain is re-verified by the caller.

use crate::base::{BaseElement, Scalar};
use crate::error::Result;
use crate::expr::Expr;
use crate::fraction::Fraction;
use crate::preorder::{ChainCertificate, LessdotCertificate, LessdotTerm, Link};

#[derive(Clone, Debug)]
pub(super) struct TermE {
    g: Expr,
    a: BaseElement,
    b: BaseElement,
    h: Expr,
}

#[derive(Clone, Debug)]
pub(super) struct LinkE {
    from: Expr,
    to: Expr,
    terms: Vec<TermE>,
}

fn refl_term(e: &Expr) -> TermE {
    let inst = e.instance();
    TermE {
        g: Expr::one(inst),
        a: inst.one(),
        b: inst.one(),
        h: e.clone(),
    }
}

fn flatten_add(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Add(a, b) => {
            flatten_add(a, out);
            flatten_add(b, out);
        }
        other => out.push(other.clone()),
    }
}

fn flatten_mul(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Mul(a, b) => {
            flatten_mul(a, out);
            flatten_mul(b, out);
        }
        other => out.push(other.clone()),
    }
}

fn split_scale(e: &Expr) -> (Scalar, &Expr) {
    match e {
        Expr::Scale(r, p) => (r.clone(), p),
        p => (Scalar::one(), p),
    }
}

/// A chain from `x` to `y` with at most `depth` links.
pub(super) fn prove(x: &Expr, y: &Expr, depth: usize) -> Option<Vec<LinkE>> {
    if depth == 0 {
        return None;
    }
    let mut links = prove_inner(x, y, depth)?;
    if links.is_empty() || links.len() > depth {
        return None;
    }
    // endpoints are fixed literally; the certificates carry the equalities
    links[0].from = x.clone();
    links.last_mut().unwrap().to = y.clone();
    Some(links)
}

fn single(x: &Expr, y: &Expr, terms: Vec<TermE>) -> Vec<LinkE> {
    vec![LinkE {
        from: x.clone(),
        to: y.clone(),
        terms,
    }]
}

fn prove_inner(x: &Expr, y: &Expr, depth: usize) -> Option<Vec<LinkE>> {
    let inst = x.instance();
    if x == y {
        return Some(single(x, y, vec![refl_term(x)]));
    }
    if x.is_zero_atom() {
        let t = TermE {
            g: y.clone(),
            a: inst.zero(),
            b: inst.one(),
            h: Expr::one(inst),
        };
        return Some(single(x, y, vec![t]));
    }
    if let (Some(a), Some(b)) = (x.as_atom(), y.as_atom()) {
        if !a.leq(b).ok()? {
            return None;
        }
        let t = TermE {
            g: Expr::one(inst),
            a: a.clone(),
            b: b.clone(),
            h: Expr::one(inst),
        };
        return Some(single(x, y, vec![t]));
    }
    if matches!(x, Expr::Add(..)) || matches!(y, Expr::Add(..)) {
        return prove_sum(x, y, depth);
    }
    if let Some(out) = inv_atom(x, y) {
        return Some(out);
    }
    prove_term(x, y, depth)
}

// Q^-1 <= c iff 1 <= Qc, and c <= Q^-1 iff Qc <= 1, both through the
// term with g = Q^-1.
fn inv_atom(x: &Expr, y: &Expr) -> Option<Vec<LinkE>> {
    let inst = x.instance();
    let (inv, c, lower_inv) = match (x, y) {
        (Expr::Inv(q), c) => (q.as_atom()?, c.as_atom()?, true),
        (c, Expr::Inv(q)) => (q.as_atom()?, c.as_atom()?, false),
        _ => return None,
    };
    let qc = inv.mul(c).ok()?;
    let (a, b) = if lower_inv {
        (inst.one(), qc)
    } else {
        (qc, inst.one())
    };
    if !a.leq(&b).ok()? {
        return None;
    }
    let g = Expr::inv(Expr::atom(inv.clone()));
    Some(single(
        x,
        y,
        vec![TermE {
            g,
            a,
            b,
            h: Expr::one(inst),
        }],
    ))
}

// r.(P1 P2 ...) with r folded into one factor: r P_i for an atom, or
// (P_i / r)^-1 for an inverted atom. Empty without an outer scalar.
fn absorb(e: &Expr) -> Vec<Expr> {
    let Expr::Scale(r, p) = e else {
        return Vec::new();
    };
    let mut fs = Vec::new();
    flatten_mul(p, &mut fs);
    let mut out = Vec::new();
    for i in 0..fs.len() {
        let folded = match &fs[i] {
            Expr::Atom(a) => Expr::atom(a.scale(r)),
            Expr::Inv(q) => match q.as_atom() {
                Some(a) => Expr::inv(Expr::atom(a.scale(&r.recip().expect("positive")))),
                None => continue,
            },
            _ => continue,
        };
        let mut g = fs.clone();
        g[i] = folded;
        out.extend(Expr::product(g));
    }
    out
}

/// Match every summand of `x` with a distinct summand of `y`; leftover
/// summands of `y` are reached from 0.
fn prove_sum(x: &Expr, y: &Expr, depth: usize) -> Option<Vec<LinkE>> {
    let inst = x.instance();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    flatten_add(x, &mut xs);
    flatten_add(y, &mut ys);
    if xs.len() > ys.len() {
        return None;
    }
    let mut used = vec![false; ys.len()];
    let mut chains: Vec<Option<Vec<LinkE>>> = vec![None; xs.len()];
    if !assign(&xs, &ys, 0, &mut used, &mut chains, depth) {
        return None;
    }
    let zero = Expr::zero(inst);
    let mut slots: Vec<(Expr, Vec<LinkE>)> = chains
        .into_iter()
        .zip(xs.iter())
        .map(|(c, x)| (x.clone(), c.unwrap()))
        .collect();
    for (j, yj) in ys.iter().enumerate() {
        if !used[j] {
            let c = prove_inner(&zero, yj, depth)?;
            slots.push((zero.clone(), c));
        }
    }
    let len = slots.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    if len > depth {
        return None;
    }
    // run the slot chains in parallel, padding finished slots reflexively
    let state = |k: usize, slot: &(Expr, Vec<LinkE>)| -> Expr {
        let (start, c) = slot;
        if c.is_empty() {
            start.clone()
        } else if k < c.len() {
            c[k].from.clone()
        } else {
            c.last().unwrap().to.clone()
        }
    };
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let from = Expr::sum(slots.iter().map(|s| state(k, s)))?;
        let to = Expr::sum(slots.iter().map(|s| state(k + 1, s)))?;
        let mut terms = Vec::new();
        for s in &slots {
            if k < s.1.len() {
                terms.extend(s.1[k].terms.iter().cloned());
            } else {
                terms.push(refl_term(&state(k, s)));
            }
        }
        out.push(LinkE { from, to, terms });
    }
    Some(out)
}

fn assign(
    xs: &[Expr],
    ys: &[Expr],
    i: usize,
    used: &mut [bool],
    chains: &mut [Option<Vec<LinkE>>],
    depth: usize,
) -> bool {
    if i == xs.len() {
        return true;
    }
    for j in 0..ys.len() {
        if used[j] {
            continue;
        }
        if let Some(c) = prove(&xs[i], &ys[j], depth) {
            used[j] = true;
            chains[i] = Some(c);
            if assign(xs, ys, i + 1, used, chains, depth) {
                return true;
            }
            used[j] = false;
            chains[i] = None;
        }
    }
    false
}

fn prove_term(x: &Expr, y: &Expr, depth: usize) -> Option<Vec<LinkE>> {
    let inst = x.instance();
    let (r, p) = split_scale(x);
    let (t, q) = split_scale(y);

    // r.P <= t.P for r <= t
    if p == q {
        if r > t {
            return None;
        }
        let term = TermE {
            g: Expr::one(inst),
            a: inst.constant(r),
            b: inst.constant(t),
            h: p.clone(),
        };
        return Some(single(x, y, vec![term]));
    }

    if matches!(x, Expr::Scale(..)) || matches!(y, Expr::Scale(..)) {
        if r > t || prove(p, q, depth).is_none() {
            let or_self = |v: Vec<Expr>, e: &Expr| {
                if v.is_empty() {
                    vec![e.clone()]
                } else {
                    v
                }
            };
            let (ax, ay) = (or_self(absorb(x), x), or_self(absorb(y), y));
            return ax
                .iter()
                .flat_map(|u| ay.iter().map(move |v| (u, v)))
                .find_map(|(u, v)| prove(u, v, depth));
        }
        // r.P <. ... <. r.Q, then r.Q <. t.Q
        let inner = prove(p, q, depth)?;
        let mut out: Vec<LinkE> = inner
            .into_iter()
            .map(|l| LinkE {
                from: Expr::scale(r.clone(), l.from),
                to: Expr::scale(r.clone(), l.to),
                terms: l
                    .terms
                    .into_iter()
                    .map(|tm| TermE {
                        g: Expr::scale(r.clone(), tm.g),
                        ..tm
                    })
                    .collect(),
            })
            .collect();
        if r < t {
            let rq = Expr::scale(r.clone(), q.clone());
            out.push(LinkE {
                from: rq,
                to: y.clone(),
                terms: vec![TermE {
                    g: Expr::one(inst),
                    a: inst.constant(r),
                    b: inst.constant(t),
                    h: q.clone(),
                }],
            });
        }
        return Some(out);
    }

    // inversion reverses the order: from Y' <= X' get X'^-1 <= Y'^-1
    if let (Expr::Inv(xi), Expr::Inv(yi)) = (x, y) {
        let inner = prove(yi, xi, depth)?;
        let wrap = |e: Expr| Expr::mul(Expr::mul(x.clone(), e), y.clone());
        let out = inner
            .into_iter()
            .map(|l| LinkE {
                from: wrap(l.from),
                to: wrap(l.to),
                terms: l
                    .terms
                    .into_iter()
                    .map(|tm| TermE {
                        g: Expr::mul(x.clone(), tm.g),
                        h: Expr::mul(tm.h, y.clone()),
                        ..tm
                    })
                    .collect(),
            })
            .collect();
        return Some(out);
    }

    // factor by factor, left to right
    let (mut fs, mut gs) = (Vec::new(), Vec::new());
    flatten_mul(x, &mut fs);
    flatten_mul(y, &mut gs);
    // pad the shorter side with trailing units
    let n = fs.len().max(gs.len());
    if n < 2 {
        return None;
    }
    fs.resize(n, Expr::one(inst));
    gs.resize(n, Expr::one(inst));
    let mut out = Vec::new();
    for i in 0..fs.len() {
        if fs[i] == gs[i] {
            continue;
        }
        let sub = prove(&fs[i], &gs[i], depth)?;
        let left = Expr::product(gs[..i].iter().cloned());
        let right = Expr::product(fs[i + 1..].iter().cloned());
        let ctx = |e: Expr| {
            let e = match &left {
                Some(l) => Expr::mul(l.clone(), e),
                None => e,
            };
            match &right {
                Some(r) => Expr::mul(e, r.clone()),
                None => e,
            }
        };
        for l in sub {
            out.push(LinkE {
                from: ctx(l.from),
                to: ctx(l.to),
                terms: l
                    .terms
                    .into_iter()
                    .map(|tm| TermE {
                        g: match &left {
                            Some(lf) => Expr::mul(lf.clone(), tm.g),
                            None => tm.g,
                        },
                        h: match &right {
                            Some(rf) => Expr::mul(tm.h, rf.clone()),
                            None => tm.h,
                        },
                        a: tm.a,
                        b: tm.b,
                    })
                    .collect(),
            });
        }
        if out.len() > depth {
            return None;
        }
    }
    Some(out)
}

/// Turn expression-level links into a certificate between `a` and `b`.
pub(super) fn to_chain(a: &Fraction, b: &Fraction, links: Vec<LinkE>) -> Result<ChainCertificate> {
    let n = links.len();
    let mut out = Vec::with_capacity(n);
    for (i, l) in links.into_iter().enumerate() {
        let from = if i == 0 {
            a.clone()
        } else {
            Fraction::new(l.from)?
        };
        let to = if i + 1 == n {
            b.clone()
        } else {
            Fraction::new(l.to)?
        };
        let terms = l
            .terms
            .into_iter()
            .map(|t| {
                Ok(LessdotTerm {
                    g: Fraction::new(t.g)?,
                    a: t.a,
                    b: t.b,
                    h: Fraction::new(t.h)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Link {
            from,
            to,
            cert: LessdotCertificate { terms },
        });
    }
    Ok(ChainCertificate {
        lower: a.clone(),
        upper: b.clone(),
        links: out,
    })
}
