//! Recursive-descent parser for the scalar expression grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := rational | 'sqrt' INT | SYMBOL | '(' expr ')' | '-' factor
//! rational := INT ('/' INT)?
//! ```
//!
//! Whitespace is insignificant. `sqrtN` is valid only when N is a subset
//! product of the field's radicands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
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
            '/' => {
                out.push((i, Tok::Slash));
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
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::SyntaxError { pos: i, msg: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a Field,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, msg: &str) -> Error {
        Error::SyntaxError { pos: self.here(), msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        match self.bump() {
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Tok::Int(n)) => {
                // rational := INT ('/' INT)?
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(Error::DivisionByZeroScalar);
                            }
                            Ok(self.field.from_rational(BigRational::new(n, d)))
                        }
                        _ => Err(self.err("expected integer denominator")),
                    }
                } else {
                    Ok(self.field.from_rational(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                if name == "sqrt" {
                    match self.bump() {
                        Some(Tok::Int(n)) => {
                            let v: i64 = n
                                .try_into()
                                .map_err(|_| Error::UnknownToken("sqrt<huge>".to_string()))?;
                            self.field.sqrt_of(v)
                        }
                        _ => Err(self.err("expected integer after sqrt")),
                    }
                } else if let Some(digits) = name.strip_prefix("sqrt") {
                    if digits.chars().all(|c| c.is_ascii_digit()) && !digits.is_empty() {
                        let v: i64 = digits.parse().map_err(|_| Error::UnknownToken(name.clone()))?;
                        self.field.sqrt_of(v)
                    } else {
                        self.field.symbol(&name)
                    }
                } else {
                    self.field.symbol(&name)
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

pub fn parse_scalar(text: &str, field: &Field) -> Result<Scalar> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::SyntaxError { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, field, end: text.len() };
    let s = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(s)
}
