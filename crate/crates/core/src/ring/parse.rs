//! Parser for the canonical polynomial text form.
//!
//! Accepts a full expression grammar (`+ - * / ^`, parentheses, integer
//! literals, variables `t1 t2 u1 u2 ...`), which subsumes the canonical
//! serialized form produced by `RingElem`'s `Display`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::elem::RingElem;
use super::mono::{VAR_T1, VAR_T2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?} for rank {1}")]
    UnknownVariable(String, usize),
    #[error("expected {0}, found {1:?}")]
    Expected(&'static str, String),
    #[error("division by zero in expression")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str, rank: usize) -> Result<Vec<Tok>, ParseError> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok::Int(s[start..i].parse().unwrap()));
            }
            't' | 'u' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let name = &s[start..i];
                let idx: u32 = name[1..]
                    .parse()
                    .map_err(|_| ParseError::UnknownVariable(name.to_string(), rank))?;
                let var = match (c, idx) {
                    ('t', 1) => VAR_T1,
                    ('t', 2) => VAR_T2,
                    ('u', k) if k >= 1 && (k as usize) <= rank => 1 + k as usize,
                    _ => return Err(ParseError::UnknownVariable(name.to_string(), rank)),
                };
                toks.push(Tok::Var(var));
            }
            _ => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<&Tok, ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<RingElem, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElem, ParseError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).map_err(|_| ParseError::DivisionByZero)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElem, ParseError> {
        let mut sign = 1i64;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            sign = -sign;
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.next()? {
                Tok::Int(e) => {
                    let e: u32 = e
                        .to_string()
                        .parse()
                        .map_err(|_| ParseError::Expected("small exponent", e.to_string()))?;
                    base = base.pow(e);
                }
                t => return Err(ParseError::Expected("integer exponent", format!("{t:?}"))),
            }
        }
        if sign < 0 {
            base = base.neg();
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingElem, ParseError> {
        match self.next()?.clone() {
            Tok::Int(n) => Ok(RingElem::from_rational(
                self.nvars,
                BigRational::from(n),
            )),
            Tok::Var(idx) => Ok(RingElem::var(self.nvars, idx)),
            Tok::LParen => {
                let e = self.expr()?;
                match self.next()? {
                    Tok::RParen => Ok(e),
                    t => Err(ParseError::Expected(")", format!("{t:?}"))),
                }
            }
            t => Err(ParseError::Expected("atom", format!("{t:?}"))),
        }
    }
}

/// Parses an expression over the rank-r coefficient field.
pub fn parse_elem(s: &str, rank: usize) -> Result<RingElem, ParseError> {
    let toks = lex(s, rank)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        nvars: rank + 2,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::Expected("end of input", format!("{:?}", toks[p.pos])));
    }
    Ok(e)
}
