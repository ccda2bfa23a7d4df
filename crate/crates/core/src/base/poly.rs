use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A monomial: sequence of variable indices (1-based). Empty is the unit word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u16) -> Self {
        Word(vec![i])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word, commutative: bool) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        if commutative {
            v.sort_unstable();
        }
        Word(v)
    }

    /// If `self = prefix * v` (or, commutatively, `prefix ⊆ self`), return `v`.
    fn strip_left(&self, prefix: &Word, commutative: bool) -> Option<Word> {
        if commutative {
            multiset_minus(&self.0, &prefix.0)
        } else if self.0.starts_with(&prefix.0) {
            Some(Word(self.0[prefix.0.len()..].to_vec()))
        } else {
            None
        }
    }

    fn strip_right(&self, suffix: &Word, commutative: bool) -> Option<Word> {
        if commutative {
            multiset_minus(&self.0, &suffix.0)
        } else if self.0.ends_with(&suffix.0) {
            Some(Word(self.0[..self.0.len() - suffix.0.len()].to_vec()))
        } else {
            None
        }
    }
}

fn multiset_minus(a: &[u16], b: &[u16]) -> Option<Word> {
    // both sorted
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    if j == b.len() {
        Some(Word(out))
    } else {
        None
    }
}

// degree first, then lexicographic
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// Finite map Word -> Scalar with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::monomial(Word::unit(), c)
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(w, c);
        }
        Polynomial { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w).or_insert_with(Scalar::zero);
        *e = &*e + c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::unit())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_letter(&self) -> u16 {
        self.coeffs
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Sort the letters of every word (commutative reading).
    pub fn commutative_form(&self) -> Polynomial {
        Polynomial::from_terms(self.coeffs.iter().map(|(w, c)| {
            let mut l = w.0.clone();
            l.sort_unstable();
            (Word(l), c.clone())
        }))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, r: &Scalar) -> Polynomial {
        if r.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (w.clone(), c * r))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, commutative: bool) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w1, c1) in &self.coeffs {
            for (w2, c2) in &other.coeffs {
                out.add_term(w1.concat(w2, commutative), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, commutative: bool) -> Polynomial {
        let mut acc = Polynomial::constant(Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self, commutative);
        }
        acc
    }

    /// Coefficient-wise comparison.
    pub fn leq(&self, other: &Polynomial) -> bool {
        self.coeffs.iter().all(|(w, c)| *c <= other.coeff(w))
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (w, c) in &self.coeffs {
            let mut term = c.clone();
            for &l in &w.0 {
                term = &term * &point[l as usize - 1];
            }
            total = total + term;
        }
        total
    }

    /// `t` with `s * t = self` and nonnegative coefficients, if it exists.
    /// Requires `s` to have a positive constant term.
    pub fn left_quotient(&self, s: &Polynomial, commutative: bool) -> Option<Polynomial> {
        self.quotient(s, commutative, true)
    }

    /// `t` with `t * s = self` and nonnegative coefficients, if it exists.
    pub fn right_quotient(&self, s: &Polynomial, commutative: bool) -> Option<Polynomial> {
        self.quotient(s, commutative, false)
    }

    fn quotient(&self, s: &Polynomial, commutative: bool, left: bool) -> Option<Polynomial> {
        let c0 = s.constant_term();
        if c0.is_zero() {
            return None;
        }
        // Any nonnegative solution has support inside supp(self), since
        // self[w] >= c0 * t[w]. Solve word by word in increasing degree.
        let mut t: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, qw) in &self.coeffs {
            let mut acc = qw.as_rational().clone();
            for (u, su) in &s.coeffs {
                if u.is_unit() {
                    continue;
                }
                let rest = if left {
                    w.strip_left(u, commutative)
                } else {
                    w.strip_right(u, commutative)
                };
                if let Some(v) = rest {
                    if let Some(tv) = t.get(&v) {
                        acc -= su.as_rational() * tv.as_rational();
                    }
                }
            }
            let tw = Scalar::from_rational(acc).ok()?;
            let tw = &tw / &c0;
            if !tw.is_zero() {
                t.insert(w.clone(), tw);
            }
        }
        let t = Polynomial { coeffs: t };
        let check = if left {
            s.mul(&t, commutative)
        } else {
            t.mul(s, commutative)
        };
        (check == *self).then_some(t)
    }

    /// Parse the literal grammar `poly := term ('+' term)*`,
    /// `term := scalar? word?`, `word := var+`, `var := 'x' INT`.
    /// `offset` is added to error positions.
    pub fn parse(text: &str, offset: usize) -> Result<Polynomial> {
        let mut p = LitParser {
            s: text.as_bytes(),
            i: 0,
            offset,
        };
        let poly = p.poly()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(poly)
    }
}

struct LitParser<'a> {
    s: &'a [u8],
    i: usize,
    offset: usize,
}

impl LitParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.offset + self.i,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn int(&mut self) -> Result<String> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        loop {
            let (w, c) = self.term()?;
            p.add_term(w, &c);
            if self.peek() == Some(b'+') {
                self.i += 1;
            } else {
                return Ok(p);
            }
        }
    }

    fn term(&mut self) -> Result<(Word, Scalar)> {
        let mut coeff = None;
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let start = self.i;
            let n = self.int()?;
            let text = if self.peek() == Some(b'/') {
                self.i += 1;
                format!("{n}/{}", self.int()?)
            } else {
                n
            };
            coeff = Some(text.parse::<Scalar>().map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax {
                    pos: self.offset + start,
                    msg,
                },
                other => other,
            })?);
        }
        let mut letters = Vec::new();
        while self.peek() == Some(b'x') {
            self.i += 1;
            let idx = self.int()?;
            let idx: u16 = idx
                .parse()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| self.err("variable index must be in 1..65535"))?;
            letters.push(idx);
        }
        if coeff.is_none() && letters.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok((Word(letters), coeff.unwrap_or_else(Scalar::one)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
