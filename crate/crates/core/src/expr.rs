//! Formal rational expressions.

use std::fmt;

use crate::base::{BaseElement, Instance, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom(BaseElement),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(Scalar, Box<Expr>),
    Inv(Box<Expr>),
}

/// Child indices from the root: 0/1 for Add and Mul, 0 for Scale and Inv.
pub type Path = Vec<u8>;

impl Expr {
    pub fn atom(x: BaseElement) -> Expr {
        Expr::Atom(x)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn scale(r: Scalar, a: Expr) -> Expr {
        Expr::Scale(r, Box::new(a))
    }

    pub fn inv(a: Expr) -> Expr {
        Expr::Inv(Box::new(a))
    }

    pub fn zero(inst: Instance) -> Expr {
        Expr::Atom(inst.zero())
    }

    pub fn one(inst: Instance) -> Expr {
        Expr::Atom(inst.one())
    }

    /// Left-nested sum; `None` for an empty list.
    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Option<Expr> {
        items.into_iter().reduce(Expr::add)
    }

    /// Left-nested product; `None` for an empty list.
    pub fn product<I: IntoIterator<Item = Expr>>(items: I) -> Option<Expr> {
        items.into_iter().reduce(Expr::mul)
    }

    /// `e * e * ... * e` (k factors), or the unit for k = 0.
    pub fn power(e: &Expr, k: u32, inst: Instance) -> Expr {
        Expr::product((0..k).map(|_| e.clone())).unwrap_or_else(|| Expr::one(inst))
    }

    pub fn as_atom(&self) -> Option<&BaseElement> {
        match self {
            Expr::Atom(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Expr::Atom(_))
    }

    pub fn is_zero_atom(&self) -> bool {
        matches!(self, Expr::Atom(x) if x.is_zero())
    }

    pub fn is_one_atom(&self) -> bool {
        matches!(self, Expr::Atom(x) if x.is_one())
    }

    /// Instance of the leftmost atom.
    pub fn instance(&self) -> Instance {
        match self {
            Expr::Atom(x) => x.instance(),
            Expr::Add(a, _) | Expr::Mul(a, _) | Expr::Scale(_, a) | Expr::Inv(a) => a.instance(),
        }
    }

    /// All atoms belong to one instance.
    pub fn check_instance(&self) -> Result<Instance> {
        let inst = self.instance();
        let mut bad = None;
        self.visit_atoms(&mut |x| {
            if x.instance() != inst && bad.is_none() {
                bad = Some(x.instance());
            }
        });
        match bad {
            Some(other) => Err(Error::InstanceMismatch(inst, other)),
            None => Ok(inst),
        }
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&BaseElement)) {
        match self {
            Expr::Atom(x) => f(x),
            Expr::Add(a, b) | Expr::Mul(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Expr::Scale(_, a) | Expr::Inv(a) => a.visit_atoms(f),
        }
    }

    /// Number of formal operations.
    pub fn op_count(&self) -> usize {
        match self {
            Expr::Atom(_) => 0,
            Expr::Add(a, b) | Expr::Mul(a, b) => 1 + a.op_count() + b.op_count(),
            Expr::Scale(_, a) | Expr::Inv(a) => 1 + a.op_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Atom(_) => 0,
            Expr::Add(a, b) | Expr::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Scale(_, a) | Expr::Inv(a) => 1 + a.depth(),
        }
    }

    pub fn is_inverse_free(&self) -> bool {
        match self {
            Expr::Atom(_) => true,
            Expr::Add(a, b) | Expr::Mul(a, b) => a.is_inverse_free() && b.is_inverse_free(),
            Expr::Scale(_, a) => a.is_inverse_free(),
            Expr::Inv(_) => false,
        }
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Atom(_) => vec![],
            Expr::Add(a, b) | Expr::Mul(a, b) => vec![a, b],
            Expr::Scale(_, a) | Expr::Inv(a) => vec![a],
        }
    }

    pub fn at(&self, path: &[u8]) -> Option<&Expr> {
        let Some((&first, rest)) = path.split_first() else {
            return Some(self);
        };
        let child = match (self, first) {
            (Expr::Add(a, _) | Expr::Mul(a, _), 0) => a,
            (Expr::Add(_, b) | Expr::Mul(_, b), 1) => b,
            (Expr::Scale(_, a) | Expr::Inv(a), 0) => a,
            _ => return None,
        };
        child.at(rest)
    }

    /// Copy of `self` with the subterm at `path` replaced.
    pub fn replaced(&self, path: &[u8], new: Expr) -> Option<Expr> {
        let Some((&first, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (self, first) {
            (Expr::Add(a, b), 0) => Expr::add(a.replaced(rest, new)?, (**b).clone()),
            (Expr::Add(a, b), 1) => Expr::add((**a).clone(), b.replaced(rest, new)?),
            (Expr::Mul(a, b), 0) => Expr::mul(a.replaced(rest, new)?, (**b).clone()),
            (Expr::Mul(a, b), 1) => Expr::mul((**a).clone(), b.replaced(rest, new)?),
            (Expr::Scale(r, a), 0) => Expr::scale(r.clone(), a.replaced(rest, new)?),
            (Expr::Inv(a), 0) => Expr::inv(a.replaced(rest, new)?),
            _ => return None,
        })
    }

    /// Every position in pre-order.
    pub fn positions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        fn go(e: &Expr, cur: &mut Path, out: &mut Vec<Path>) {
            out.push(cur.clone());
            for (i, c) in e.children().into_iter().enumerate() {
                cur.push(i as u8);
                go(c, cur, out);
                cur.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Fully parenthesized surface syntax; `parse(render(e)) == e`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, s: &mut String) {
        use std::fmt::Write;
        match self {
            Expr::Atom(x) => {
                let _ = write!(s, "{{{x}}}");
            }
            Expr::Add(a, b) | Expr::Mul(a, b) => {
                let op = if matches!(self, Expr::Add(..)) {
                    '+'
                } else {
                    '*'
                };
                s.push('(');
                a.render_into(s);
                let _ = write!(s, " {op} ");
                b.render_into(s);
                s.push(')');
            }
            Expr::Scale(r, a) => {
                let _ = write!(s, "({r} . ");
                a.render_into(s);
                s.push(')');
            }
            Expr::Inv(a) => {
                s.push('(');
                a.render_into(s);
                s.push_str(")^-1");
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
