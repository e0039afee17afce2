//! Plain-text polynomial grammar.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := power (('*' | '/')? power)*      // '/' needs a constant divisor
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(src[start..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(AlgebraError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    match f.constant_value() {
                        Some(c) if c != BigRational::from_integer(0.into()) => acc = acc.scale(&(BigRational::from_integer(1.into()) / c)),
                        _ => return self.err("division only by nonzero constants"),
                    }
                }
                Some(Tok::Num(_) | Tok::Name(_) | Tok::Sym('(')) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| AlgebraError::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, BigRational::from_integer(n)))
            }
            Some(Tok::Name(v)) => match self.ring.var_index(&v) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                None => self.err(format!("unknown variable {v}")),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl PolyRing {
    /// Parses a polynomial whose variables all belong to this ring.
    pub fn parse(self: &Arc<Self>, src: &str) -> Result<Polynomial> {
        let toks = lex(src)?;
        let mut p = Parser { ring: self, toks, pos: 0, end: src.len() };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

/// Variable names in order of first appearance across the sources.
pub fn collect_variables<'s>(sources: impl IntoIterator<Item = &'s str>) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for s in sources {
        for (_, t) in lex(s)? {
            if let Tok::Name(n) = t {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
    }
    Ok(names)
}
