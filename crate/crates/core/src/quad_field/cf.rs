//! Simple continued fractions of quadratic irrationals.
//!
//! Expansion runs the PQa recurrence on `(P + √d)/Q` with `Q | d − P²`,
//! which keeps every complete quotient in integer state and makes the
//! period detectable as the first repeated `(P, Q)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{mobius_apply, Mat2Z, QuadError, QuadIrr, QuadValue, Rational};

/// An eventually periodic expansion `[pre₀; pre₁, …, (per₀, …, perₙ₋₁)]`.
///
/// The period has minimal length and is stored as its lexicographically
/// least rotation; the preperiod absorbs whatever rotation that takes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl CfExpansion {
    /// Validates and canonicalizes an expansion given as quotient lists.
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self, QuadError> {
        if period.is_empty() {
            return Err(QuadError::InvalidExpansion("empty period".into()));
        }
        let tail = preperiod.iter().skip(1).chain(period.iter());
        if let Some(bad) = tail.clone().find(|a| !a.is_positive()) {
            return Err(QuadError::InvalidExpansion(format!(
                "partial quotient {} after the first must be >= 1",
                bad
            )));
        }
        Ok(Self::canonical(preperiod, period))
    }

    /// Minimal period in its lexicographically least rotation. `a₀` always
    /// sits in the preperiod, so a purely periodic expansion lists one full
    /// period there.
    fn canonical(mut preperiod: Vec<BigInt>, mut period: Vec<BigInt>) -> Self {
        let n = period.len();
        if let Some(t) = (1..n).find(|t| n % t == 0 && (0..n).all(|i| period[i] == period[i % t])) {
            period.truncate(t);
        }
        let n = period.len();
        let best = (0..n)
            .min_by(|&i, &j| {
                let ri = period[i..].iter().chain(&period[..i]);
                let rj = period[j..].iter().chain(&period[..j]);
                ri.cmp(rj)
            })
            .unwrap_or(0);
        if preperiod.is_empty() && best == 0 {
            preperiod.extend_from_slice(&period);
        }
        preperiod.extend_from_slice(&period[..best]);
        period.rotate_left(best);
        CfExpansion { preperiod, period }
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// Index of the first quotient of the canonical period.
    pub fn tail_start(&self) -> usize {
        self.preperiod.len()
    }

    /// The `i`-th partial quotient `aᵢ`.
    pub fn quotient(&self, i: usize) -> &BigInt {
        match self.preperiod.get(i) {
            Some(a) => a,
            None => &self.period[(i - self.preperiod.len()) % self.period.len()],
        }
    }

    pub fn quotients(&self) -> impl Iterator<Item = &BigInt> + '_ {
        (0..).map(move |i| self.quotient(i))
    }

    /// Re-evaluates the expansion exactly.
    ///
    /// The purely periodic tail `y` is the root greater than one of
    /// `C·y² + (D − A)·y − B = 0` for the period's convergent matrix
    /// `[[A, B], [C, D]]`; the preperiod is then folded back on by Möbius action.
    pub fn value(&self) -> Result<QuadIrr, QuadError> {
        let per = self
            .period
            .iter()
            .fold(Mat2Z::identity(), |m, a| &m * &Mat2Z::partial_quotient(a));
        let (a, b, c, d) = (per.a(), per.b(), per.c(), per.d());
        let disc = (a - d) * (a - d) + BigInt::from(4) * b * c;
        let tail = QuadValue::from_parts(a - d, 1, BigInt::from(2) * c, disc)?.into_irrational()?;
        let pre = self
            .preperiod
            .iter()
            .fold(Mat2Z::identity(), |m, a| &m * &Mat2Z::partial_quotient(a));
        Ok(mobius_apply(&pre, &tail))
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "[{}; ({})]", join(&self.preperiod), join(&self.period))
    }
}

/// `floor((P + √d)/Q)` for non-square `d`.
fn pq_floor(p: &BigInt, q: &BigInt, d: &BigInt) -> BigInt {
    let s = d.sqrt();
    if q.is_positive() {
        (p + s).div_floor(q)
    } else {
        (-p - s - BigInt::one()).div_floor(&-q)
    }
}

pub fn cf_expand(x: &QuadIrr) -> CfExpansion {
    let d = x.q() * x.q() * x.discriminant();
    let (mut p, mut q) = if x.q().is_positive() {
        (x.p().clone(), x.r().clone())
    } else {
        (-x.p(), -x.r())
    };
    let mut d = d;
    if !(&d - &p * &p).is_multiple_of(&q) {
        let scale = q.abs();
        p *= &scale;
        d *= &q * &q;
        q *= &scale;
    }

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = quotients.split_off(start);
            return CfExpansion::canonical(quotients, period);
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let a = pq_floor(&p, &q, &d);
        let next_p = &a * &q - &p;
        let (next_q, rem) = (&d - &next_p * &next_p).div_rem(&q);
        debug_assert!(rem.is_zero(), "PQa invariant Q | d - P^2 broken");
        quotients.push(a);
        p = next_p;
        q = next_q;
    }
}

/// `[[a₀,1],[1,0]] ⋯ [[a_{k−1},1],[1,0]]`; maps the `k`-th complete
/// quotient back to the source number.
pub fn convergent_matrix(cf: &CfExpansion, k: usize) -> Mat2Z {
    cf.quotients()
        .take(k)
        .fold(Mat2Z::identity(), |m, a| &m * &Mat2Z::partial_quotient(a))
}

/// The `k`-th complete quotient `x_k`, with `x₀ = x` and
/// `x_{i+1} = 1/(x_i − ⌊x_i⌋)`.
pub fn complete_quotient(x: &QuadIrr, k: usize) -> QuadIrr {
    let mut cur = QuadValue::Irrational(x.clone());
    for _ in 0..k {
        let frac = cur
            .checked_sub(&QuadValue::Rational(Rational::from_integer(cur.floor())))
            .expect("same field");
        cur = frac.recip().expect("fractional part of an irrational is nonzero");
    }
    cur.into_irrational().expect("complete quotients stay irrational")
}

impl QuadIrr {
    pub fn continued_fraction(&self) -> CfExpansion {
        cf_expand(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(s: &str) -> QuadIrr {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| a.into()).collect()
    }

    #[test]
    fn expansion_examples() {
        let cases: [(&str, &[i64], &[i64]); 6] = [
            ("sqrt(2)", &[1], &[2]),
            ("(1+sqrt(5))/2", &[1], &[1]),
            ("sqrt(3)", &[1], &[1, 2]),
            ("sqrt(7)", &[2], &[1, 1, 1, 4]),
            ("sqrt(13)", &[3], &[1, 1, 1, 1, 6]),
            ("1+sqrt(2)", &[2], &[2]),
        ];
        for (src, pre, per) in cases {
            let cf = cf_expand(&qi(src));
            assert_eq!(cf.preperiod(), &ints(pre)[..], "{}", src);
            assert_eq!(cf.period(), &ints(per)[..], "{}", src);
            assert_eq!(cf.value().unwrap(), qi(src));
        }
    }

    #[test]
    fn negative_and_small_inputs() {
        for src in ["-sqrt(2)", "sqrt(2)/7", "(-5+sqrt(13))/3", "-3*sqrt(7)/2", "(1-sqrt(5))/2"] {
            let x = qi(src);
            let cf = cf_expand(&x);
            assert_eq!(cf.value().unwrap(), x, "{} -> {}", src, cf);
            assert_eq!(cf.quotient(0), &x.floor());
        }
    }

    #[test]
    fn canonical_rotation_keeps_value() {
        // [1; (2, 1)] is rotated to [1, 2; (1, 2)]
        let cf = CfExpansion::new(ints(&[1]), ints(&[2, 1])).unwrap();
        assert_eq!(cf.preperiod(), &ints(&[1, 2])[..]);
        assert_eq!(cf.period(), &ints(&[1, 2])[..]);
        // x = 1 + 1/y with y = [2; 1, y], i.e. y² − 2y − 2 = 0, y = 1 + √3
        assert_eq!(cf.value().unwrap(), qi("1+1/(1+sqrt(3))"));
        // non-minimal period collapses
        let cf = CfExpansion::new(ints(&[0]), ints(&[3, 3, 3])).unwrap();
        assert_eq!(cf.period(), &ints(&[3])[..]);
    }

    #[test]
    fn rejects_bad_expansions() {
        assert!(CfExpansion::new(ints(&[1]), vec![]).is_err());
        assert!(CfExpansion::new(ints(&[1, 0]), ints(&[2])).is_err());
        assert!(CfExpansion::new(ints(&[]), ints(&[-1])).is_err());
        assert!(CfExpansion::new(ints(&[-4]), ints(&[2])).is_ok());
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(convergent_matrix(&cf_expand(&qi("sqrt(2)")), 0), Mat2Z::identity());
        assert_eq!(
            convergent_matrix(&cf_expand(&qi("sqrt(2)")), 2),
            Mat2Z::new(3, 1, 2, 1).unwrap()
        );
        assert_eq!(
            convergent_matrix(&cf_expand(&qi("(1+sqrt(5))/2")), 3),
            Mat2Z::new(3, 2, 2, 1).unwrap()
        );
    }

    #[test]
    fn convergents_map_complete_quotients_back() {
        for src in ["sqrt(2)", "sqrt(13)", "(-5+sqrt(13))/3", "-3*sqrt(7)/2"] {
            let x = qi(src);
            let cf = cf_expand(&x);
            for k in 0..12 {
                let m = convergent_matrix(&cf, k);
                assert_eq!(mobius_apply(&m, &complete_quotient(&x, k)), x, "{} k={}", src, k);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(m.det(), BigInt::from(sign));
            }
        }
    }
}
