//! Text front-end for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := INT | VAR ('^' INT)? | '(' expr ')' ('^' INT)?
//! ```
//! Whitespace is insignificant; variables are ASCII identifiers; adjacency
//! multiplies. A leading sign is also accepted.

use crate::error::ParseError;
use crate::poly::{Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return Err(ParseError::new(i, format!("unexpected character {:?}", c))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Ring,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut negate = false;
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            negate = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.bump();
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // adjacency: INT, identifier or parenthesis starts a factor
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let at = self.here();
        match self.bump() {
            Some((_, Tok::Int(digits))) => Ok(Poly::constant(self.ring, self.reduce_int(&digits))),
            Some((_, Tok::Ident(name))) => {
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| ParseError::new(at, format!("unknown variable {:?}", name)))?;
                let base = Poly::variable(self.ring, idx);
                match self.exponent()? {
                    None => Ok(base),
                    Some(e) => Ok(base.pow(e as u64)),
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => {}
                    other => {
                        let pos = other.map(|(p, _)| p).unwrap_or(self.end);
                        return Err(ParseError::new(pos, "expected ')'"));
                    }
                }
                match self.exponent()? {
                    None => Ok(inner),
                    Some(e) => Ok(inner.pow(e as u64)),
                }
            }
            Some((p, tok)) => Err(ParseError::new(p, format!("unexpected token {:?}", tok))),
            None => Err(ParseError::new(self.end, "unexpected end of input")),
        }
    }

    /// An optional `^ INT` suffix; the exponent must fit 32 bits.
    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.bump();
        let at = self.here();
        match self.bump() {
            Some((_, Tok::Int(digits))) => {
                let e: u32 = digits
                    .parse()
                    .map_err(|_| ParseError::new(at, format!("exponent overflow: {}", digits)))?;
                Ok(Some(e))
            }
            other => {
                let pos = other.map(|(p, _)| p).unwrap_or(self.end);
                Err(ParseError::new(
                    pos,
                    "expected an integer exponent after '^'",
                ))
            }
        }
    }

    /// Fold a digit string modulo p, so arbitrarily long literals are fine.
    fn reduce_int(&self, digits: &str) -> i64 {
        let p = self.ring.characteristic();
        let mut acc: u64 = 0;
        for d in digits.bytes() {
            acc = (acc * 10 + (d - b'0') as u64) % p;
        }
        acc as i64
    }
}

/// Parse `text` as a polynomial in `ring`, reducing coefficients mod p.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, ParseError> {
    parse_inner(text, ring).map_err(|e| e.located_in(text))
}

fn parse_inner(text: &str, ring: &Ring) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        ring,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if let Some((p, tok)) = parser.toks.get(parser.pos) {
        return Err(ParseError::new(*p, format!("unexpected token {:?}", tok)));
    }
    Ok(poly)
}
