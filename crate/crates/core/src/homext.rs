//! Monotone homomorphisms into the nonnegative rationals and their unique
//! extension to expressions and fractions.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::{BaseElement, Instance, Scalar};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fraction::Fraction;
use crate::legality::classify;

/// Point evaluation `x_i -> point[i]`; the identity on QPlus.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MonotoneHom {
    pub instance: Instance,
    pub point: Vec<Scalar>,
}

impl MonotoneHom {
    pub fn new(instance: Instance, point: Vec<Scalar>) -> Result<Self> {
        if point.len() != instance.n_vars() {
            return Err(Error::Domain(format!(
                "{instance} needs a point with {} coordinates, got {}",
                instance.n_vars(),
                point.len()
            )));
        }
        Ok(MonotoneHom { instance, point })
    }

    pub fn identity() -> Self {
        MonotoneHom {
            instance: Instance::QPlus,
            point: vec![],
        }
    }

    pub fn apply(&self, x: &BaseElement) -> Result<Scalar> {
        if x.instance() != self.instance {
            return Err(Error::InstanceMismatch(self.instance, x.instance()));
        }
        Ok(x.eval(&self.point))
    }
}

fn eval_rec(h: &MonotoneHom, e: &Expr) -> Result<Scalar> {
    Ok(match e {
        Expr::Atom(x) => h.apply(x)?,
        Expr::Add(a, b) => eval_rec(h, a)? + eval_rec(h, b)?,
        Expr::Mul(a, b) => eval_rec(h, a)? * eval_rec(h, b)?,
        Expr::Scale(r, a) => r * &eval_rec(h, a)?,
        Expr::Inv(a) => eval_rec(h, a)?
            .recip()
            .ok_or_else(|| Error::Domain("reciprocal of zero".into()))?,
    })
}

/// Value of a legal expression under the extension of `h`.
pub fn eval_expr(h: &MonotoneHom, e: &Expr) -> Result<Scalar> {
    if !classify(e).is_legal() {
        return Err(Error::Illegal(e.render()));
    }
    eval_rec(h, e)
}

pub fn eval_fraction(h: &MonotoneHom, f: &Fraction) -> Result<Scalar> {
    eval_rec(h, f.rep())
}

const GRID: [(u64, u64); 10] = [
    (2, 1),
    (1, 2),
    (4, 1),
    (3, 1),
    (3, 2),
    (1, 4),
    (5, 2),
    (1, 3),
    (7, 2),
    (3, 4),
];

/// A deterministic family of sample homomorphisms.
///
/// Order: the all-one point, the all-zero point, a diagonal grid, 0/1
/// corners, then random points `k/d` with `d <= 64` in `[0, 4]`. Points are
/// distinct. QPlus has only the identity.
pub fn sample_homs(instance: Instance, count: usize, seed: u64) -> Vec<MonotoneHom> {
    shared_homs(instance, count, seed).as_ref().clone()
}

type HomKey = (Instance, usize, u64);

/// `sample_homs`, memoized; the hot loops in eq and leq borrow from here.
pub(crate) fn shared_homs(instance: Instance, count: usize, seed: u64) -> Arc<Vec<MonotoneHom>> {
    static CACHE: OnceLock<Mutex<HashMap<HomKey, Arc<Vec<MonotoneHom>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (instance, count, seed);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(generate_homs(instance, count, seed));
    cache.lock().unwrap().entry(key).or_insert(v).clone()
}

fn generate_homs(instance: Instance, count: usize, seed: u64) -> Vec<MonotoneHom> {
    let n = instance.n_vars();
    if n == 0 {
        return vec![MonotoneHom::identity()];
    }
    let count = count.max(1);
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut push = |p: Vec<Scalar>, out: &mut Vec<MonotoneHom>| {
        if out.len() < count && seen.insert(p.clone()) {
            out.push(MonotoneHom { instance, point: p });
        }
    };
    push(vec![Scalar::one(); n], &mut out);
    push(vec![Scalar::zero(); n], &mut out);
    for (a, b) in GRID {
        push(vec![Scalar::new(a, b).unwrap(); n], &mut out);
    }
    if n > 1 {
        for mask in 1..(1u32 << n.min(10)) - 1 {
            let p = (0..n)
                .map(|i| {
                    if i < 10 && mask & (1 << i) != 0 {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect();
            push(p, &mut out);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 50 * count + 1000 {
        attempts += 1;
        let p = (0..n)
            .map(|_| {
                let d: u64 = rng.gen_range(1..=64);
                let k: u64 = rng.gen_range(0..=4 * d);
                Scalar::new(k, d).unwrap()
            })
            .collect();
        push(p, &mut out);
    }
    out
}

/// First sampled hom on which the two expressions take different values.
pub fn separating_hom(a: &Expr, b: &Expr, count: usize, seed: u64) -> Result<Option<MonotoneHom>> {
    for h in shared_homs(a.instance(), count, seed).iter() {
        if eval_expr(h, a)? != eval_expr(h, b)? {
            return Ok(Some(h.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn eval_example() {
        let nc = Instance::PolyNc(1);
        let e = parse("({1+x1} + {1})^-1", nc).unwrap();
        let h = MonotoneHom::new(nc, vec![Scalar::from_int(3)]).unwrap();
        assert_eq!(eval_expr(&h, &e).unwrap(), Scalar::new(1, 5).unwrap());
        assert!(eval_expr(&h, &parse("({0})^-1", nc).unwrap()).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_has_corners() {
        let nc = Instance::PolyNc(1);
        let a = sample_homs(nc, 40, 7);
        assert_eq!(a, sample_homs(nc, 40, 7));
        assert_eq!(a.len(), 40);
        assert_eq!(a[0].point, vec![Scalar::one()]);
        assert_eq!(a[1].point, vec![Scalar::zero()]);
        let distinct: HashSet<_> = a.iter().map(|h| h.point.clone()).collect();
        assert_eq!(distinct.len(), 40);
        assert_eq!(sample_homs(Instance::QPlus, 5, 1).len(), 1);
    }

    #[test]
    fn many_points_available() {
        let pts = sample_homs(Instance::PolyNc(1), 1200, 3);
        assert_eq!(pts.len(), 1200);
        assert!(pts.iter().all(|h| h.point[0] <= Scalar::from_int(4)));
    }
}
