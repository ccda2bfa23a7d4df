//! Bounded bidirectional breadth-first search over single rewrite steps.

use std::collections::{HashMap, VecDeque};

use crate::expr::Expr;
use crate::fraction::rules::{applicable_steps, RewriteStep};

/// Terms may grow by at most this many operations beyond the larger
/// endpoint; keeps the frontier from drifting into ever larger terms.
const GROWTH: usize = 4;

struct Side {
    // term -> (predecessor, step from predecessor to term)
    parent: HashMap<Expr, Option<(Expr, RewriteStep)>>,
    queue: VecDeque<Expr>,
}

impl Side {
    fn new(start: &Expr) -> Side {
        let mut parent = HashMap::new();
        parent.insert(start.clone(), None);
        Side {
            parent,
            queue: VecDeque::from([start.clone()]),
        }
    }

    /// Steps from the start to `e`.
    fn path_to(&self, e: &Expr) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        let mut cur = e.clone();
        while let Some(Some((prev, step))) = self.parent.get(&cur) {
            out.push(step.clone());
            cur = prev.clone();
        }
        out.reverse();
        out
    }
}

/// Look for a chain of rewrites from `a` to `b`, exploring at most `limit`
/// rewrite applications. Returns the trace from `a` to `b`.
pub fn search_equal(a: &Expr, b: &Expr, limit: usize) -> Option<Vec<RewriteStep>> {
    if a == b {
        return Some(Vec::new());
    }
    let max_ops = a.op_count().max(b.op_count()) + GROWTH;
    let mut sides = [Side::new(a), Side::new(b)];
    let mut spent = 0usize;
    while spent < limit {
        let s = if sides[0].queue.len() <= sides[1].queue.len() && !sides[0].queue.is_empty() {
            0
        } else if !sides[1].queue.is_empty() {
            1
        } else if !sides[0].queue.is_empty() {
            0
        } else {
            return None;
        };
        let cur = sides[s].queue.pop_front().expect("nonempty");
        for step in applicable_steps(&cur, false) {
            spent += 1;
            let next = step.apply(&cur).ok()?;
            if next.op_count() > max_ops || sides[s].parent.contains_key(&next) {
                continue;
            }
            sides[s]
                .parent
                .insert(next.clone(), Some((cur.clone(), step)));
            if sides[1 - s].parent.contains_key(&next) {
                let (fa, fb) = (&sides[0], &sides[1]);
                let mut trace = fa.path_to(&next);
                let back = fb.path_to(&next);
                trace.extend(back.iter().rev().map(RewriteStep::inverse));
                return Some(trace);
            }
            sides[s].queue.push_back(next);
            if spent >= limit {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Instance;
    use crate::fraction::rules::replay;
    use crate::parser::parse;

    #[test]
    fn finds_commuted_sum() {
        let nc = Instance::PolyNc(1);
        let a = parse("({2})^-1 + ({3})^-1", nc).unwrap();
        let b = parse("({3})^-1 + ({2})^-1", nc).unwrap();
        let t = search_equal(&a, &b, 100).unwrap();
        assert_eq!(replay(&a, &t).unwrap(), b);
    }

    #[test]
    fn respects_budget() {
        let nc = Instance::PolyNc(1);
        let a = parse("({2})^-1", nc).unwrap();
        let b = parse("({3})^-1", nc).unwrap();
        assert!(search_equal(&a, &b, 50).is_none());
    }
}
