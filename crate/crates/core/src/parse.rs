//! Tokenizer and recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        -- '/' only by a nonzero constant
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! The same tokenizer serves the ring descriptor grammar in `algebra::ring`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::series::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
pub(crate) struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    pub(crate) fn new(src: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let bytes: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                toks.push((start, Tok::Int(BigInt::from_str(&s).expect("digits"))));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(bytes[start..i].iter().collect())));
            } else if "+-*/^()[],".contains(c) {
                toks.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end: bytes.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn position(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected identifier"))
            }
        }
    }

    pub(crate) fn expect_u32(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                let out = u32::try_from(v).map_err(|_| self.error("integer too large"))?;
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error("expected integer")),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.position(),
            message: message.into(),
        }
    }
}

/// Parse a polynomial expression over `field` in the given ordered variables.
pub fn parse_polynomial(src: &str, field: Field, vars: &Arc<Vec<String>>) -> Result<MultiPoly> {
    let index: BTreeMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut lx = Lexer::new(src)?;
    if lx.at_end() {
        return Err(lx.error("empty expression"));
    }
    let ctx = Ctx {
        field,
        vars,
        index: &index,
    };
    let p = ctx.expr(&mut lx)?;
    lx.finish()?;
    Ok(p)
}

struct Ctx<'a> {
    field: Field,
    vars: &'a Arc<Vec<String>>,
    index: &'a BTreeMap<&'a str, usize>,
}

impl Ctx<'_> {
    fn expr(&self, lx: &mut Lexer) -> Result<MultiPoly> {
        let mut acc = self.term(lx)?;
        loop {
            if lx.eat('+') {
                acc = acc.add(&self.term(lx)?);
            } else if lx.eat('-') {
                acc = acc.sub(&self.term(lx)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, lx: &mut Lexer) -> Result<MultiPoly> {
        let mut acc = self.unary(lx)?;
        loop {
            if lx.eat('*') {
                acc = acc.mul(&self.unary(lx)?);
            } else if lx.eat('/') {
                let at = lx.position();
                let d = self.unary(lx)?;
                let c = d.as_constant().ok_or(Error::Parse {
                    position: at,
                    message: "division only by a constant".into(),
                })?;
                let inv = c.inverse().ok_or(Error::Parse {
                    position: at,
                    message: "division by zero".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&self, lx: &mut Lexer) -> Result<MultiPoly> {
        if lx.eat('-') {
            Ok(self.unary(lx)?.neg())
        } else {
            self.power(lx)
        }
    }

    fn power(&self, lx: &mut Lexer) -> Result<MultiPoly> {
        let base = self.atom(lx)?;
        if lx.eat('^') {
            let e = lx.expect_u32()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&self, lx: &mut Lexer) -> Result<MultiPoly> {
        let at = lx.position();
        match lx.next() {
            Some(Tok::Int(v)) => Ok(MultiPoly::constant(
                self.field,
                self.vars.clone(),
                self.field.from_bigint(&v),
            )),
            Some(Tok::Ident(name)) => match self.index.get(name.as_str()) {
                Some(&i) => Ok(MultiPoly::variable(self.field, self.vars.clone(), i)),
                None => Err(Error::Parse {
                    position: at,
                    message: format!("unknown variable `{name}`"),
                }),
            },
            Some(Tok::Sym('(')) => {
                let e = self.expr(lx)?;
                lx.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Parse {
                position: at,
                message: "expected number, variable or `(`".into(),
            }),
        }
    }
}

/// Parse `[c0, c1, ...]` where each entry is a scalar literal of `field`.
pub fn parse_scalar_list(src: &str, field: Field) -> Result<Vec<crate::algebra::Scalar>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Parse {
            position: 0,
            message: format!("expected `[...]`, got `{s}`"),
        })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|c| field.parse_scalar(c)).collect()
}

/// Split a bracketed, comma-separated list at top-level commas.
pub fn split_top_level(src: &str) -> Result<Vec<String>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Parse {
            position: 0,
            message: format!("expected `[...]`, got `{s}`"),
        })?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    Ok(out.into_iter().map(|s| s.trim().to_string()).collect())
}
