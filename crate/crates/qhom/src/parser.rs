//! Recursive-descent parser for the polynomial input language.
//!
//! Grammar (whitespace insignificant, `*` required for products):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' uint)?
//! var      := 'x0' | 'x1' | 'x2' | 'x' | 'y' | 'z'
//! ```
//!
//! `x`, `y`, `z` alias `x0`, `x1`, `x2`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use num::bigint::BigInt;
use num::{BigRational, One};

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut sign = BigRational::one();
        if self.eat(b'-') {
            sign = -sign;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            if e > u16::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            let p = base.power(e as u32);
            self.skip_ws();
            Ok(p)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.eat(b'(');
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(Polynomial::constant(r))
            }
            Some(b'x') | Some(b'y') | Some(b'z') => self.variable(),
            _ => Err(self.err("expected number, variable, or '('")),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let c = self.peek().unwrap();
        self.pos += 1;
        let idx = match c {
            b'y' => 1,
            b'z' => 2,
            b'x' => match self.peek() {
                Some(b'0') => {
                    self.pos += 1;
                    0
                }
                Some(b'1') => {
                    self.pos += 1;
                    1
                }
                Some(b'2') => {
                    self.pos += 1;
                    2
                }
                Some(d) if d.is_ascii_digit() => {
                    return Err(self.err("unknown variable (only x0, x1, x2)"))
                }
                _ => 0,
            },
            _ => unreachable!(),
        };
        self.skip_ws();
        Ok(Polynomial::var(idx))
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected unsigned integer"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        let v = s.parse().map_err(|_| self.err("integer out of range"));
        self.skip_ws();
        v
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let n: BigInt = std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .unwrap();
        let n = if neg { -n } else { n };
        self.skip_ws();
        if self.eat(b'/') {
            let d = self.uint()?;
            if d == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, BigInt::from(d)))
        } else {
            self.skip_ws();
            Ok(BigRational::from(n))
        }
    }
}

/// Reads a polynomial from file contents: UTF-8, `#` starts a comment, the
/// remaining text is one expression.
pub fn parse_polynomial_file(contents: &str) -> Result<Polynomial> {
    let stripped: String = contents
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    parse_polynomial(&stripped)
}
