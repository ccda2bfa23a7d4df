//! Legal and null expressions, and evaluation of inverse-free ones.

use serde::{Deserialize, Serialize};

use crate::base::BaseElement;
use crate::error::{Error, Result};
use crate::expr::Expr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LegalityClass {
    Illegal,
    Null,
    NonNullLegal,
}

impl LegalityClass {
    pub fn is_legal(self) -> bool {
        self != LegalityClass::Illegal
    }

    pub fn is_null(self) -> bool {
        self == LegalityClass::Null
    }
}

pub fn classify(e: &Expr) -> LegalityClass {
    use LegalityClass::*;
    match e {
        Expr::Atom(x) => {
            if x.is_zero() {
                Null
            } else {
                NonNullLegal
            }
        }
        Expr::Add(a, b) => match (classify(a), classify(b)) {
            (Illegal, _) | (_, Illegal) => Illegal,
            (Null, Null) => Null,
            _ => NonNullLegal,
        },
        Expr::Mul(a, b) => match (classify(a), classify(b)) {
            (Illegal, _) | (_, Illegal) => Illegal,
            (Null, _) | (_, Null) => Null,
            _ => NonNullLegal,
        },
        Expr::Scale(r, a) => match classify(a) {
            Illegal => Illegal,
            Null => Null,
            NonNullLegal if r.is_zero() => Null,
            NonNullLegal => NonNullLegal,
        },
        Expr::Inv(a) => match classify(a) {
            NonNullLegal => NonNullLegal,
            _ => Illegal,
        },
    }
}

/// Value in S of an inverse-free expression.
pub fn eval_in_s(e: &Expr) -> Result<BaseElement> {
    match e {
        Expr::Atom(x) => Ok(x.clone()),
        Expr::Add(a, b) => eval_in_s(a)?.add(&eval_in_s(b)?),
        Expr::Mul(a, b) => eval_in_s(a)?.mul(&eval_in_s(b)?),
        Expr::Scale(r, a) => Ok(eval_in_s(a)?.scale(r)),
        Expr::Inv(_) => Err(Error::Domain(
            "expression contains an inverse and has no value in S".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Instance;
    use crate::parser::parse;

    fn cls(s: &str) -> LegalityClass {
        classify(&parse(s, Instance::PolyNc(1)).unwrap())
    }

    #[test]
    fn worked_verdicts() {
        assert_eq!(cls("({2} + {1+x1})^-1"), LegalityClass::NonNullLegal);
        assert_eq!(cls("({0} * {1+x1})^-1"), LegalityClass::Illegal);
        assert_eq!(cls("{0} * {1+x1}"), LegalityClass::Null);
        assert_ne!(cls("({2} + {1+x1})^-1"), LegalityClass::Null);
    }

    #[test]
    fn scale_by_zero() {
        assert_eq!(cls("0 . {1+x1}"), LegalityClass::Null);
        assert_eq!(cls("0 . ({0})^-1"), LegalityClass::Illegal);
        assert_eq!(cls("({0} + {0})^-1"), LegalityClass::Illegal);
    }

    #[test]
    fn evaluation() {
        let nc = Instance::PolyNc(1);
        let e = parse("{1+x1} + 2 . {3}", nc).unwrap();
        assert_eq!(
            eval_in_s(&e).unwrap(),
            nc.parse_element("7 + x1", 0).unwrap()
        );
        let q = Instance::QPlus;
        let e = parse("{2} * {3} + {1}", q).unwrap();
        assert_eq!(eval_in_s(&e).unwrap(), q.parse_element("7", 0).unwrap());
        let e = parse("0 . {5}", q).unwrap();
        assert!(eval_in_s(&e).unwrap().is_zero());
        assert!(eval_in_s(&parse("{2}^-1", q).unwrap()).is_err());
    }
}
