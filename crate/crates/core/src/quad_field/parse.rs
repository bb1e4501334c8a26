//! Text grammar for elements of `ℚ(√D)`.
//!
//! Accepts sums, products and quotients of integers and `sqrt(N)` with the
//! usual precedence, so every canonical rendering (`sqrt(2)`,
//! `(1+sqrt(5))/2`, `-3*sqrt(7)/2`, `3/4`) parses back to the same value.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{QuadError, QuadIrr, QuadValue};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), QuadError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn error(&self, msg: &str) -> QuadError {
        QuadError::Parse(format!("{} at offset {} in {:?}", msg, self.pos, self.src))
    }

    fn sum(&mut self) -> Result<QuadValue, QuadError> {
        let mut acc = if self.eat('-') {
            self.product()?.neg()
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.product()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<QuadValue, QuadError> {
        let mut acc = self.atom()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.atom()?)?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.atom()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<QuadValue, QuadError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QuadValue::from_integer(self.integer()?)),
            Some('s') => {
                if !self.src[self.pos..].starts_with("sqrt") {
                    return Err(self.error("unknown identifier"));
                }
                self.pos += 4;
                self.expect('(')?;
                let neg = self.eat('-');
                let n = self.integer()?;
                self.expect(')')?;
                if neg {
                    return Err(QuadError::NonPositiveDiscriminant(-n));
                }
                if n == BigInt::from(0) {
                    return Ok(QuadValue::zero());
                }
                QuadValue::from_parts(0, 1, 1, n)
            }
            Some(c) => Err(self.error(&format!("unexpected '{}'", c))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, QuadError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }
}

pub fn parse_quad(src: &str) -> Result<QuadValue, QuadError> {
    let mut p = Parser { src, pos: 0 };
    let v = p.sum()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

impl FromStr for QuadValue {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quad(s)
    }
}

impl FromStr for QuadIrr {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quad(s)?.into_irrational()
    }
}
