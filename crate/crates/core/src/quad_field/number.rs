use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QuadError, Rational};

/// Splits `n > 0` as `s² · core` with `core` squarefree.
///
/// Trial division only runs up to the cube root of the unfactored part: what
/// remains afterwards has at most two prime factors, so it is either
/// squarefree or a perfect square.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_split needs a positive integer");
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let absorb = |p: &BigInt, e: u32, square: &mut BigInt, core: &mut BigInt| {
        *square *= p.pow(e / 2);
        if e % 2 == 1 {
            *core *= p;
        }
    };
    for p in num_prime::nt_funcs::primes(1 << 12) {
        let p = BigInt::from(p);
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            absorb(&p, e, &mut square, &mut core);
        }
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        return (square * root, core);
    }
    let big = rest.to_biguint().expect("positive cofactor");
    for (p, e) in num_prime::nt_funcs::factorize(big) {
        absorb(&BigInt::from(p), e as u32, &mut square, &mut core);
    }
    (square, core)
}

/// A real quadratic irrational `(p + q·√d)/r` in canonical form.
///
/// Canonical means `d > 1` squarefree, `q ≠ 0`, `r > 0` and
/// `gcd(p, q, r) = 1`, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// An element of `ℚ(√d)`: rational, or a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuadValue {
    Rational(Rational),
    Irrational(QuadIrr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Brings `(p + q·√d)/r` to canonical form, requiring an irrational result.
pub fn quad_normalize(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
    r: impl Into<BigInt>,
    d: impl Into<BigInt>,
) -> Result<QuadIrr, QuadError> {
    QuadValue::from_parts(p, q, r, d)?.into_irrational()
}

pub fn quad_arith(x: &QuadValue, op: ArithOp, y: &QuadValue) -> Result<QuadValue, QuadError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

impl QuadIrr {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// The squarefree discriminant `d`.
    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    /// Coordinates `(p/r, q/r)` in the basis `{1, √d}`.
    pub fn coords(&self) -> (Rational, Rational) {
        (
            Rational::new(self.p.clone(), self.r.clone()),
            Rational::new(self.q.clone(), self.r.clone()),
        )
    }

    /// Galois conjugate `(p − q√d)/r`.
    pub fn conjugate(&self) -> QuadIrr {
        QuadIrr {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact floor, by comparing against `isqrt(q²d)`; `q√d` is never an
    /// integer so `floor(q√d)` is `isqrt` or `−isqrt − 1` by sign.
    pub fn floor(&self) -> BigInt {
        let s = (&self.q * &self.q * &self.d).sqrt();
        let surd_floor = if self.q.is_positive() { s } else { -s - 1 };
        (&self.p + surd_floor).div_floor(&self.r)
    }

    pub fn is_positive(&self) -> bool {
        self.floor() >= BigInt::zero()
    }

    /// Decimal approximation for display only.
    pub fn approx(&self) -> f64 {
        let (a, b) = self.coords();
        let to_f = |x: &Rational| -> f64 {
            x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                / x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN)
        };
        let d: f64 = self.d.to_string().parse().unwrap_or(f64::NAN);
        to_f(&a) + to_f(&b) * d.sqrt()
    }
}

impl QuadValue {
    pub fn zero() -> Self {
        QuadValue::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadValue::Rational(Rational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        QuadValue::Rational(Rational::from_integer(n.into()))
    }

    /// Canonicalizes `(p + q·√d)/r`, reducing `d` to its squarefree part.
    pub fn from_parts(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, QuadError> {
        let (p, q, r, d) = (p.into(), q.into(), r.into(), d.into());
        if r.is_zero() {
            return Err(QuadError::ZeroDenominator);
        }
        if !d.is_positive() {
            return Err(QuadError::NonPositiveDiscriminant(d));
        }
        let (s, core) = squarefree_split(&d);
        let a = Rational::new(p, r.clone());
        if core.is_one() {
            return Ok(QuadValue::Rational(a + Rational::new(q * s, r)));
        }
        Ok(Self::from_coords(a, Rational::new(q * s, r), &core))
    }

    /// Builds `a + b·√d` for an already squarefree `d > 1`.
    pub(crate) fn from_coords(a: Rational, b: Rational, d: &BigInt) -> Self {
        if b.is_zero() {
            return QuadValue::Rational(a);
        }
        let r = a.denom().lcm(b.denom());
        let mut p = a.numer() * (&r / a.denom());
        let mut q = b.numer() * (&r / b.denom());
        let mut r = r;
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadValue::Irrational(QuadIrr {
            p,
            q,
            r,
            d: d.clone(),
        })
    }

    pub fn discriminant(&self) -> Option<&BigInt> {
        match self {
            QuadValue::Rational(_) => None,
            QuadValue::Irrational(x) => Some(&x.d),
        }
    }

    /// Coordinates in the basis `{1, √d}`; the surd coordinate of a rational is zero.
    pub fn coords(&self) -> (Rational, Rational) {
        match self {
            QuadValue::Rational(a) => (a.clone(), Rational::zero()),
            QuadValue::Irrational(x) => x.coords(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QuadValue::Rational(a) if a.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, QuadValue::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            QuadValue::Rational(a) => Some(a),
            QuadValue::Irrational(_) => None,
        }
    }

    pub fn as_irrational(&self) -> Option<&QuadIrr> {
        match self {
            QuadValue::Rational(_) => None,
            QuadValue::Irrational(x) => Some(x),
        }
    }

    pub fn into_irrational(self) -> Result<QuadIrr, QuadError> {
        match self {
            QuadValue::Rational(a) => Err(QuadError::RationalValue(a)),
            QuadValue::Irrational(x) => Ok(x),
        }
    }

    /// The discriminant shared by `self` and `other`, if any.
    pub fn common_discriminant<'a>(
        &'a self,
        other: &'a QuadValue,
    ) -> Result<Option<&'a BigInt>, QuadError> {
        match (self.discriminant(), other.discriminant()) {
            (Some(a), Some(b)) if a != b => Err(QuadError::MixedDiscriminant(a.clone(), b.clone())),
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    pub fn checked_add(&self, other: &QuadValue) -> Result<QuadValue, QuadError> {
        let d = self.common_discriminant(other)?;
        let ((a1, b1), (a2, b2)) = (self.coords(), other.coords());
        Ok(Self::assemble(a1 + a2, b1 + b2, d))
    }

    pub fn checked_sub(&self, other: &QuadValue) -> Result<QuadValue, QuadError> {
        let d = self.common_discriminant(other)?;
        let ((a1, b1), (a2, b2)) = (self.coords(), other.coords());
        Ok(Self::assemble(a1 - a2, b1 - b2, d))
    }

    pub fn checked_mul(&self, other: &QuadValue) -> Result<QuadValue, QuadError> {
        let d = self.common_discriminant(other)?;
        let ((a1, b1), (a2, b2)) = (self.coords(), other.coords());
        let dd = d.map(|d| Rational::from_integer(d.clone())).unwrap_or_else(Rational::zero);
        let a = &a1 * &a2 + &b1 * &b2 * dd;
        let b = a1 * b2 + a2 * b1;
        Ok(Self::assemble(a, b, d))
    }

    pub fn checked_div(&self, other: &QuadValue) -> Result<QuadValue, QuadError> {
        self.common_discriminant(other)?;
        self.checked_mul(&other.recip()?)
    }

    /// Multiplicative inverse `(a − b√d)/(a² − b²d)`.
    pub fn recip(&self) -> Result<QuadValue, QuadError> {
        match self {
            QuadValue::Rational(a) if a.is_zero() => Err(QuadError::DivisionByZero),
            QuadValue::Rational(a) => Ok(QuadValue::Rational(a.recip())),
            QuadValue::Irrational(x) => {
                let (a, b) = x.coords();
                let norm = &a * &a - &b * &b * Rational::from_integer(x.d.clone());
                Ok(Self::from_coords(a / &norm, -b / norm, &x.d))
            }
        }
    }

    pub fn neg(&self) -> QuadValue {
        match self {
            QuadValue::Rational(a) => QuadValue::Rational(-a),
            QuadValue::Irrational(x) => QuadValue::Irrational(QuadIrr {
                p: -&x.p,
                q: -&x.q,
                r: x.r.clone(),
                d: x.d.clone(),
            }),
        }
    }

    pub fn scale(&self, k: &BigInt) -> QuadValue {
        let (a, b) = self.coords();
        let k = Rational::from_integer(k.clone());
        Self::assemble(a * &k, b * k, self.discriminant())
    }

    pub fn floor(&self) -> BigInt {
        match self {
            QuadValue::Rational(a) => a.floor().to_integer(),
            QuadValue::Irrational(x) => x.floor(),
        }
    }

    fn assemble(a: Rational, b: Rational, d: Option<&BigInt>) -> QuadValue {
        match d {
            Some(d) => Self::from_coords(a, b, d),
            None => QuadValue::Rational(a),
        }
    }
}

impl From<QuadIrr> for QuadValue {
    fn from(x: QuadIrr) -> Self {
        QuadValue::Irrational(x)
    }
}

impl From<Rational> for QuadValue {
    fn from(a: Rational) -> Self {
        QuadValue::Rational(a)
    }
}

impl From<BigInt> for QuadValue {
    fn from(n: BigInt) -> Self {
        QuadValue::from_integer(n)
    }
}

impl From<i64> for QuadValue {
    fn from(n: i64) -> Self {
        QuadValue::from_integer(n)
    }
}

impl TryFrom<QuadValue> for QuadIrr {
    type Error = QuadError;

    fn try_from(value: QuadValue) -> Result<Self, Self::Error> {
        value.into_irrational()
    }
}

// Renders in the input grammar, e.g. `sqrt(2)`, `(1+sqrt(5))/2`, `-3*sqrt(7)/2`.
impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = match &self.q {
            q if q.is_one() => format!("sqrt({})", self.d),
            q if *q == -BigInt::one() => format!("-sqrt({})", self.d),
            q => format!("{}*sqrt({})", q, self.d),
        };
        let numer = if self.p.is_zero() {
            surd
        } else if self.q.is_negative() {
            format!("{}{}", self.p, surd)
        } else {
            format!("{}+{}", self.p, surd)
        };
        match (self.r.is_one(), self.p.is_zero()) {
            (true, _) => f.write_str(&numer),
            (false, true) => write!(f, "{}/{}", numer, self.r),
            (false, false) => write!(f, "({})/{}", numer, self.r),
        }
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadValue::Rational(a) => write!(f, "{}", a),
            QuadValue::Irrational(x) => write!(f, "{}", x),
        }
    }
}
