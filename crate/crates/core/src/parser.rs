//! Recursive-descent parser for the expression surface syntax.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := scalar '.' factor | prim
//! prim   := ('{' literal '}' | '(' expr ')') ('^-1')*
//! ```

use crate::base::{Instance, Scalar};
use crate::error::{Error, Result};
use crate::expr::Expr;

pub fn parse(text: &str, instance: Instance) -> Result<Expr> {
    let mut p = Parser {
        src: text,
        pos: 0,
        instance,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Fully parenthesized rendering; `parse` inverts it.
pub fn render(e: &Expr) -> String {
    e.render()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    instance: Instance,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        while self.eat("+") {
            e = Expr::add(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.eat("*") {
            e = Expr::mul(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.scalar()?;
                self.expect(".")?;
                Ok(Expr::scale(r, self.factor()?))
            }
            _ => self.prim(),
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        // optional "/INT", allowing spaces around the slash
        let mut look = end;
        while look < bytes.len() && bytes[look] == b' ' {
            look += 1;
        }
        if look < bytes.len() && bytes[look] == b'/' {
            look += 1;
            while look < bytes.len() && bytes[look] == b' ' {
                look += 1;
            }
            let dstart = look;
            while look < bytes.len() && bytes[look].is_ascii_digit() {
                look += 1;
            }
            if look == dstart {
                self.pos = dstart;
                return Err(self.err("expected denominator"));
            }
            end = look;
        }
        let text = &self.src[start..end];
        let r = text.parse::<Scalar>().map_err(|e| match e {
            Error::Syntax { msg, .. } => Error::Syntax { pos: start, msg },
            other => other,
        })?;
        self.pos = end;
        Ok(r)
    }

    fn prim(&mut self) -> Result<Expr> {
        let mut e = match self.peek() {
            Some('{') => {
                self.pos += 1;
                let start = self.pos;
                let close = self
                    .rest()
                    .find('}')
                    .ok_or_else(|| self.err("unclosed '{'"))?;
                let lit = &self.src[start..start + close];
                let x = self.instance.parse_element(lit, start)?;
                self.pos = start + close + 1;
                Expr::atom(x)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                e
            }
            Some(_) => return Err(self.err("expected '{', '(' or a scalar")),
            None => return Err(self.err("unexpected end of input")),
        };
        while self.eat("^-1") {
            e = Expr::inv(e);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc() -> Instance {
        Instance::PolyNc(1)
    }

    fn atom(s: &str) -> Expr {
        Expr::atom(nc().parse_element(s, 0).unwrap())
    }

    #[test]
    fn grammar_structure() {
        let e = parse("({1+x1} + {2})^-1", nc()).unwrap();
        assert_eq!(e, Expr::inv(Expr::add(atom("1 + x1"), atom("2"))));
    }

    #[test]
    fn scalar_precedence() {
        let e = parse("1/2 . {2} * {3}", nc()).unwrap();
        let half = Scalar::new(1, 2).unwrap();
        assert_eq!(e, Expr::mul(Expr::scale(half, atom("2")), atom("3")));
    }

    #[test]
    fn left_associative() {
        let e = parse("{1} + {2} + {3}", nc()).unwrap();
        assert_eq!(e, Expr::add(Expr::add(atom("1"), atom("2")), atom("3")));
        let e = parse("{1} * {2} + {3} * {1}", nc()).unwrap();
        assert_eq!(
            e,
            Expr::add(
                Expr::mul(atom("1"), atom("2")),
                Expr::mul(atom("3"), atom("1"))
            )
        );
    }

    #[test]
    fn membership_error() {
        assert!(matches!(parse("{x1}", nc()), Err(Error::Membership { .. })));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("{1} + ", nc()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse("({1}", nc()).is_err());
        assert!(parse("{1} {2}", nc()).is_err());
        assert!(parse("2 {1}", nc()).is_err());
    }

    #[test]
    fn double_inverse() {
        let e = parse("{2}^-1^-1", nc()).unwrap();
        assert_eq!(e, Expr::inv(Expr::inv(atom("2"))));
    }
}
