//! Term grammar: `q^a * u^b * v^c * u[k; uid, vid]` and `v[m; vid, uid]`.
//!
//! Zero exponents are elided, exponent 1 is written bare, a non-unit
//! scalar leads the product and terms are joined with ` + `.

use std::fmt;

use num_traits::{One, Zero};

use super::{Basis, Monomial, RepPair, Torus, TorusElement, TorusError};
use crate::quad_field::Rational;

fn push_power(parts: &mut Vec<String>, sym: &str, e: i64) {
    match e {
        0 => {}
        1 => parts.push(sym.to_string()),
        e => parts.push(format!("{}^{}", sym, e)),
    }
}

fn monomial_parts(m: &Monomial) -> Vec<String> {
    let mut parts = Vec::new();
    if !m.scalar().is_one() {
        parts.push(m.scalar().to_string());
    }
    push_power(&mut parts, "q", m.qexp());
    push_power(&mut parts, "u", m.uexp());
    push_power(&mut parts, "v", m.vexp());
    parts
}

pub(crate) fn monomial_string(m: &Monomial) -> String {
    let parts = monomial_parts(m);
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&monomial_string(self))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::U(b) => write!(f, "u[{}; {}, {}]", b.gamma_exp, b.rep.uid(), b.rep.vid()),
            Basis::V(b) => write!(f, "v[{}; {}, {}]", b.gamma_exp, b.rep.vid(), b.rep.uid()),
        }
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms()
            .map(|t| {
                let mut parts = monomial_parts(&t.coeff);
                parts.push(t.basis.to_string());
                parts.join(" * ")
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> TorusError {
        TorusError::Parse(format!("{} at offset {} in {:?}", msg, self.pos, self.src))
    }

    fn expect(&mut self, token: &str) -> Result<(), TorusError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", token)))
        }
    }

    fn integer(&mut self) -> Result<i64, TorusError> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected integer"))
    }

    fn identifier(&mut self, terminator: char) -> Result<String, TorusError> {
        self.skip_ws();
        let end = self
            .rest()
            .find(terminator)
            .ok_or_else(|| self.error(&format!("expected {:?}", terminator)))?;
        let id = self.rest()[..end].trim().to_string();
        self.pos += end;
        Ok(id)
    }

    fn exponent(&mut self) -> Result<i64, TorusError> {
        if self.eat("^") {
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn scalar(&mut self) -> Result<Rational, TorusError> {
        let n = self.integer()?;
        let d = if self.eat("/") { self.integer()? } else { 1 };
        if d == 0 {
            return Err(self.error("zero denominator"));
        }
        Ok(Rational::new(n.into(), d.into()))
    }

    /// `[k; a, b]` after the bundle letter.
    fn bracket(&mut self) -> Result<(i64, String, String), TorusError> {
        self.expect("[")?;
        let k = self.integer()?;
        self.expect(";")?;
        let first = self.identifier(',')?;
        self.expect(",")?;
        let second = self.identifier(']')?;
        self.expect("]")?;
        Ok((k, first, second))
    }

    fn term(&mut self) -> Result<(Monomial, Basis), TorusError> {
        let mut scalar = Rational::one();
        let (mut q, mut u, mut v) = (0i64, 0i64, 0i64);
        loop {
            self.skip_ws();
            let rest = self.rest();
            if rest.starts_with("u[") || rest.starts_with("v[") {
                let is_u = rest.starts_with('u');
                self.pos += 1;
                let (k, first, second) = self.bracket()?;
                let basis = if is_u {
                    Basis::u(RepPair::new(first, second)?, k)
                } else {
                    Basis::v(RepPair::new(second, first)?, k)
                };
                return Ok((Monomial::new(scalar, q, u, v)?, basis));
            }
            if self.eat("q") {
                q += self.exponent()?;
            } else if self.eat("u") {
                u += self.exponent()?;
            } else if self.eat("v") {
                v += self.exponent()?;
            } else if rest.starts_with(|c: char| c == '-' || c.is_ascii_digit()) {
                scalar *= self.scalar()?;
            } else {
                return Err(self.error("expected factor"));
            }
            self.expect("*")?;
        }
    }
}

impl TorusElement {
    /// Parses the rendering produced by `Display` into an element of `torus`.
    pub fn parse(torus: &Torus, src: &str) -> Result<TorusElement, TorusError> {
        let mut cur = Cursor { src, pos: 0 };
        if src.trim() == "0" {
            return Ok(TorusElement::zero(torus));
        }
        let mut out = TorusElement::zero(torus);
        loop {
            let (coeff, basis) = cur.term()?;
            if coeff.scalar().is_zero() {
                return Err(TorusError::ZeroScalar);
            }
            out = out.add(&TorusElement::from_term(torus, coeff, basis))?;
            cur.skip_ws();
            if cur.rest().is_empty() {
                return Ok(out);
            }
            cur.expect("+")?;
        }
    }
}
