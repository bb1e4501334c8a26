use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{QuadError, QuadIrr, QuadValue, Rational};

/// An integer matrix `[[a, b], [c, d]]` with `|ad − bc| = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2Z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, QuadError> {
        let m = Mat2Z {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(QuadError::NotUnimodular(det))
        }
    }

    pub fn identity() -> Self {
        Mat2Z {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// `[[a, 1], [1, 0]]`, the matrix of one continued-fraction step.
    pub fn partial_quotient(a: &BigInt) -> Self {
        Mat2Z {
            a: a.clone(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `[[d, −b], [−c, a]]`; equals `det · M⁻¹`, so it is `±M⁻¹`.
    pub fn adjugate(&self) -> Mat2Z {
        Mat2Z {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn inverse(&self) -> Mat2Z {
        let adj = self.adjugate();
        if self.det().is_negative() {
            adj.negated()
        } else {
            adj
        }
    }

    pub fn negated(&self) -> Mat2Z {
        Mat2Z {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().iter().map(|e| e.abs()).max().expect("four entries")
    }

    /// Möbius action `(a·x + b)/(c·x + d)`.
    pub fn apply(&self, x: &QuadIrr) -> QuadIrr {
        mobius_apply(self, x)
    }
}

/// Exact `(a·x + b)/(c·x + d)`.
///
/// `c·x + d` cannot vanish for irrational `x` and the result is irrational
/// because the determinant is nonzero.
pub fn mobius_apply(m: &Mat2Z, x: &QuadIrr) -> QuadIrr {
    let xv = QuadValue::Irrational(x.clone());
    let int = |n: &BigInt| QuadValue::Rational(Rational::from_integer(n.clone()));
    let num = xv.scale(&m.a).checked_add(&int(&m.b)).expect("same field");
    let den = xv.scale(&m.c).checked_add(&int(&m.d)).expect("same field");
    num.checked_div(&den)
        .expect("c·x + d is nonzero for irrational x")
        .into_irrational()
        .expect("unimodular image of an irrational is irrational")
}

impl Mul for &Mat2Z {
    type Output = Mat2Z;

    fn mul(self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl Mul for Mat2Z {
    type Output = Mat2Z;

    fn mul(self, rhs: Mat2Z) -> Mat2Z {
        &self * &rhs
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(s: &str) -> QuadIrr {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(Mat2Z::new(1, 1, 1, 1), Err(QuadError::NotUnimodular(0.into())));
        assert_eq!(Mat2Z::new(0, 2, 1, 0), Err(QuadError::NotUnimodular((-2).into())));
        assert!(Mat2Z::new(0, 1, 1, 0).is_ok());
    }

    #[test]
    fn mobius_examples() {
        let r2 = qi("sqrt(2)");
        assert_eq!(mobius_apply(&Mat2Z::identity(), &r2), r2);
        assert_eq!(mobius_apply(&Mat2Z::new(1, 1, 0, 1).unwrap(), &r2), qi("1+sqrt(2)"));
        assert_eq!(mobius_apply(&Mat2Z::new(0, 1, 1, 0).unwrap(), &r2), qi("sqrt(2)/2"));
    }

    #[test]
    fn inverse_is_exact() {
        for m in [Mat2Z::new(2, 1, 1, 1).unwrap(), Mat2Z::new(3, 1, 2, 1).unwrap(), Mat2Z::new(0, 1, 1, 0).unwrap()] {
            assert_eq!(&m * &m.inverse(), Mat2Z::identity());
            assert_eq!(&m.inverse() * &m, Mat2Z::identity());
        }
    }
}
