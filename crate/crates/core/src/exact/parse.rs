//! Field-element grammar.
//!
//! ```text
//! elem  := sign? term (('+'|'-') term)*
//! term  := coeff | coeff? '*'? 'i' | coeff? '*'? mono
//! coeff := int ('/' posint)?
//! mono  := var ('^' posint)? ('*' var ('^' posint)?)*
//! var   := 't' posint
//! ```
//!
//! `mono` accepts products and powers so that every polynomial printed by
//! [`Polynomial`]'s `Display` parses back. Whitespace between tokens is
//! ignored. Positions in errors are byte offsets into the input.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Field, FieldMode, GaussianRational, Monomial, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum TermKind {
    Const,
    Imag,
    Mono(Vec<u32>),
}

#[derive(Debug, Clone)]
struct Term {
    pos: usize,
    coeff: Rational,
    kind: TermKind,
}

#[derive(Debug, Clone)]
pub(crate) struct Expr {
    terms: Vec<Term>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn posint(&mut self, what: &str) -> Result<BigInt> {
        let at = self.pos;
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().unwrap();
                if v == BigInt::from(0) {
                    Err(Error::Syntax { pos: at, msg: format!("{what} must be positive") })
                } else {
                    Ok(v)
                }
            }
            None => self.err(format!("expected {what}")),
        }
    }

    fn small_posint(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.posint(what)?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: at, msg: format!("{what} too large") })
    }

    fn var(&mut self) -> Result<(usize, u32)> {
        if !self.eat(b't') {
            return self.err("expected variable `t<index>`");
        }
        let index = self.small_posint("variable index")? as usize;
        let exp = if self.eat(b'^') { self.small_posint("exponent")? } else { 1 };
        Ok((index, exp))
    }

    fn mono(&mut self) -> Result<Vec<u32>> {
        let mut exps: Vec<u32> = Vec::new();
        loop {
            let (index, exp) = self.var()?;
            if exps.len() < index {
                exps.resize(index, 0);
            }
            exps[index - 1] += exp;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            return Ok(exps);
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        let coeff = match self.digits() {
            Some(d) => {
                let numer: BigInt = d.parse().unwrap();
                let denom = if self.eat(b'/') { self.posint("denominator")? } else { BigInt::from(1) };
                Some(Rational::from_bigints(numer, denom)?)
            }
            None => None,
        };
        let had_coeff = coeff.is_some();
        if had_coeff && self.peek() == Some(b'*') {
            self.pos += 1;
            if !matches!(self.peek(), Some(b'i') | Some(b't')) {
                return self.err("expected `i` or a variable after `*`");
            }
        }
        let kind = match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                TermKind::Imag
            }
            Some(b't') => TermKind::Mono(self.mono()?),
            _ if had_coeff => TermKind::Const,
            Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            None => return self.err("unexpected end of input"),
        };
        let mut coeff = coeff.unwrap_or_else(Rational::one);
        if negative {
            coeff = -coeff;
        }
        Ok(Term { pos, coeff, kind })
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut negative = false;
    if cur.eat(b'-') {
        negative = true;
    } else {
        cur.eat(b'+');
    }
    let mut terms = vec![cur.term(negative)?];
    loop {
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                terms.push(cur.term(false)?);
            }
            Some(b'-') => {
                cur.pos += 1;
                terms.push(cur.term(true)?);
            }
            Some(c) => return cur.err(format!("unexpected character `{}`", c as char)),
        }
    }
    Ok(Expr { terms })
}

fn wrong_mode(term: &Term, mode: FieldMode) -> Error {
    let literal = match &term.kind {
        TermKind::Imag => "i".to_string(),
        TermKind::Mono(e) => Polynomial::monomial(Rational::one(), Monomial::new(e.clone())).to_string(),
        TermKind::Const => term.coeff.to_string(),
    };
    Error::WrongMode { pos: term.pos, literal, mode: mode.name() }
}

impl Expr {
    pub(crate) fn into_rational(self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in self.terms {
            match t.kind {
                TermKind::Const => acc = acc + t.coeff,
                _ => return Err(wrong_mode(&t, FieldMode::Rational)),
            }
        }
        Ok(acc)
    }

    pub(crate) fn into_gaussian(self) -> Result<GaussianRational> {
        let (mut re, mut im) = (Rational::zero(), Rational::zero());
        for t in self.terms {
            match t.kind {
                TermKind::Const => re = re + t.coeff,
                TermKind::Imag => im = im + t.coeff,
                TermKind::Mono(_) => return Err(wrong_mode(&t, FieldMode::Gaussian)),
            }
        }
        Ok(GaussianRational::new(re, im))
    }

    pub(crate) fn into_polynomial(self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        for t in self.terms {
            match t.kind {
                TermKind::Const => acc = acc + Polynomial::constant(t.coeff),
                TermKind::Mono(e) => acc = acc + Polynomial::monomial(t.coeff, Monomial::new(e)),
                TermKind::Imag => return Err(wrong_mode(&t, FieldMode::Symbolic)),
            }
        }
        Ok(acc)
    }
}

/// A parsed element tagged with its field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldElement {
    Rational(Rational),
    Gaussian(GaussianRational),
    Symbolic(RationalFunction),
}

impl FieldElement {
    pub fn mode(&self) -> FieldMode {
        match self {
            FieldElement::Rational(_) => FieldMode::Rational,
            FieldElement::Gaussian(_) => FieldMode::Gaussian,
            FieldElement::Symbolic(_) => FieldMode::Symbolic,
        }
    }

    /// Guess the field from the literal: `i` selects Gaussian, `t` symbolic.
    pub fn infer_mode(text: &str) -> FieldMode {
        if text.contains('t') {
            FieldMode::Symbolic
        } else if text.contains('i') {
            FieldMode::Gaussian
        } else {
            FieldMode::Rational
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(x) => x.fmt(f),
            FieldElement::Gaussian(x) => x.fmt(f),
            FieldElement::Symbolic(x) => x.fmt(f),
        }
    }
}

impl From<FieldElement> for String {
    fn from(e: FieldElement) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for FieldElement {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_field_element(&s, FieldElement::infer_mode(&s))
    }
}

/// Parse `text` as an element of the field selected by `mode`.
pub fn parse_field_element(text: &str, mode: FieldMode) -> Result<FieldElement> {
    Ok(match mode {
        FieldMode::Rational => FieldElement::Rational(Rational::parse(text)?),
        FieldMode::Gaussian => FieldElement::Gaussian(GaussianRational::parse(text)?),
        FieldMode::Symbolic => FieldElement::Symbolic(RationalFunction::parse(text)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(
            parse_field_element("-3/7", FieldMode::Rational).unwrap(),
            FieldElement::Rational(Rational::new(-3, 7).unwrap())
        );
        assert_eq!(
            parse_field_element("1+2i", FieldMode::Gaussian).unwrap(),
            FieldElement::Gaussian(GaussianRational::new(1.into(), 2.into()))
        );
        assert_eq!(
            parse_field_element("t1", FieldMode::Symbolic).unwrap(),
            FieldElement::Symbolic(RationalFunction::var(1))
        );
    }

    #[test]
    fn sums_and_monomials() {
        assert_eq!(Rational::parse("1/2 + 1/3 - 1").unwrap(), Rational::new(-1, 6).unwrap());
        assert_eq!(GaussianRational::parse("1-i").unwrap().to_string(), "1-i");
        assert_eq!(GaussianRational::parse("-i").unwrap().to_string(), "-i");
        let p = RationalFunction::parse("2t1*t2^2 - 3t3 + 1/2").unwrap();
        assert_eq!(p.to_string(), "2t1*t2^2-3t3+1/2");
        assert_eq!(RationalFunction::parse("-t2").unwrap().to_string(), "-t2");
        assert_eq!(RationalFunction::parse("3*t1").unwrap().to_string(), "3t1");
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            Rational::parse("1/0").unwrap_err(),
            Error::Syntax { pos: 2, msg: "denominator must be positive".into() }
        );
        assert!(matches!(Rational::parse(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(Rational::parse("1+"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(Rational::parse("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(RationalFunction::parse("t0"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(Rational::parse("1//2"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn wrong_mode_literals() {
        assert_eq!(
            Rational::parse("1+i").unwrap_err(),
            Error::WrongMode { pos: 2, literal: "i".into(), mode: "rational" }
        );
        assert!(matches!(GaussianRational::parse("t1"), Err(Error::WrongMode { pos: 0, .. })));
        assert!(matches!(RationalFunction::parse("2i"), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn mode_inference() {
        assert_eq!(FieldElement::infer_mode("1/2"), FieldMode::Rational);
        assert_eq!(FieldElement::infer_mode("1+i"), FieldMode::Gaussian);
        assert_eq!(FieldElement::infer_mode("t3"), FieldMode::Symbolic);
    }
}
