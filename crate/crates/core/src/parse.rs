//! Recursive-descent parser for the literal grammar shared by point
//! coordinates and coordinate forms:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+')* atom ('^' integer)?
//! atom   := integer | 't' | 'X'<digits> | '(' expr ')'
//! ```
//!
//! Division is only by nonzero rational constants, so `1/2*t` and `(t+1)/3`
//! parse while `1/t` is rejected. Errors carry 1-based line/column positions
//! relative to the parsed string.

use crate::error::{Error, Result};
use crate::forms::XPoly;
use crate::poly::UniPoly;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    X(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..at.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let start = self.pos;
            let b = self.src[self.pos];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let mut end = self.pos;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    out.push((Tok::Int(text.parse().unwrap()), start));
                    self.pos = end;
                }
                b't' => {
                    out.push((Tok::T, start));
                    self.pos += 1;
                }
                b'X' => {
                    let mut end = self.pos + 1;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    if end == self.pos + 1 {
                        let (line, col) = self.location(start);
                        return Err(Error::syntax(line, col, "expected digits after 'X'"));
                    }
                    let idx: usize = std::str::from_utf8(&self.src[self.pos + 1..end])
                        .unwrap()
                        .parse()
                        .map_err(|_| {
                            let (line, col) = self.location(start);
                            Error::syntax(line, col, "coordinate index out of range")
                        })?;
                    out.push((Tok::X(idx), start));
                    self.pos = end;
                }
                b'+' => {
                    out.push((Tok::Plus, start));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((Tok::Minus, start));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((Tok::Star, start));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((Tok::Slash, start));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((Tok::Caret, start));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, start));
                    self.pos += 1;
                }
                b')' => {
                    out.push((Tok::RParen, start));
                    self.pos += 1;
                }
                _ => {
                    let (line, col) = self.location(start);
                    return Err(Error::syntax(
                        line,
                        col,
                        format!("unexpected character '{}'", b as char),
                    ));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    src: &'a str,
    /// Number of projective coordinates allowed; `None` forbids X variables.
    k: Option<usize>,
}

impl<'a> Parser<'a> {
    fn err(&self, at_tok: usize, msg: impl Into<String>) -> Error {
        let at = self
            .toks
            .get(at_tok)
            .map(|(_, p)| *p)
            .unwrap_or(self.src.len());
        let (line, col) = Lexer::new(self.src).location(at);
        Error::syntax(line, col, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn n_vars(&self) -> usize {
        self.k.unwrap_or(0)
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.idx += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let at = self.idx;
                    self.idx += 1;
                    let rhs = self.factor()?;
                    let c = rhs
                        .as_coordinate_free()
                        .and_then(|p| {
                            if p.is_constant() {
                                Some(p.constant_term())
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| {
                            self.err(at, "division is only by nonzero rational constants")
                        })?;
                    if c.is_zero() {
                        return Err(self.err(at, "division by zero"));
                    }
                    acc = acc.mul_scalar(&UniPoly::constant(c.recip()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<XPoly> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.idx += 1;
                }
                Some(Tok::Plus) => {
                    self.idx += 1;
                }
                _ => break,
            }
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            let at = self.idx;
            self.idx += 1;
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e = n
                        .to_u32()
                        .ok_or_else(|| self.err(at + 1, "exponent out of range"))?;
                    base = base.pow(e);
                }
                _ => return Err(self.err(at + 1, "expected an integer exponent after '^'")),
            }
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<XPoly> {
        let at = self.idx;
        match self.next() {
            Some(Tok::Int(n)) => Ok(XPoly::constant(
                self.n_vars(),
                UniPoly::constant(Rational::from_integer(n)),
            )),
            Some(Tok::T) => Ok(XPoly::constant(self.n_vars(), UniPoly::var())),
            Some(Tok::X(i)) => match self.k {
                None => Err(self.err(at, "projective coordinates are not allowed here")),
                Some(k) if i > k => Err(self.err(
                    at,
                    format!("coordinate X{i} exceeds the declared dimension k = {k}"),
                )),
                Some(k) => Ok(XPoly::coordinate(k, i)),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err(self.idx, "expected ')'")),
                }
            }
            Some(_) => Err(self.err(at, "expected a number, variable, or '('")),
            None => Err(self.err(at, "unexpected end of expression")),
        }
    }

    fn finish(mut self, k: Option<usize>) -> Result<XPoly> {
        self.k = k;
        let value = self.expr()?;
        if self.idx != self.toks.len() {
            return Err(self.err(self.idx, "trailing input after expression"));
        }
        Ok(value)
    }
}

fn parse_with(src: &str, k: Option<usize>) -> Result<XPoly> {
    let toks = Lexer::new(src).tokens()?;
    if toks.is_empty() {
        return Err(Error::syntax(1, 1, "empty expression"));
    }
    let parser = Parser {
        toks,
        idx: 0,
        src,
        k,
    };
    parser.finish(k)
}

/// Parses a polynomial literal in `t` alone, e.g. `3*t^2 - 1/2*t + 4`.
pub fn parse_unipoly(src: &str) -> Result<UniPoly> {
    let x = parse_with(src, None)?;
    Ok(x.as_coordinate_free().expect("no coordinates allowed"))
}

/// Parses a form literal over `t, X0..Xk`, e.g. `X0^2 + t*X1^2`.
pub fn parse_xpoly(src: &str, k: usize) -> Result<XPoly> {
    parse_with(src, Some(k))
}
