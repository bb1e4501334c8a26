//! Deciding `GL₂(ℤ)`-equivalence of quadratic irrationals.
//!
//! Two irrationals are equivalent iff their continued fractions share a
//! tail. For quadratic irrationals the tail is the canonical period, so the
//! decision is a comparison of two finite lists; the witness matrix comes
//! from the convergent matrices at the start of each period.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coset_model::{cosets_correspond, CosetError};
use crate::quad_field::{cf_expand, convergent_matrix, mobius_apply, CfExpansion, Mat2Z, QuadError, QuadIrr, QuadValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoritaError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("witness does not satisfy θ = (aθ₂ + b)/θ₁ = cθ₂ + d: {lhs} vs {rhs}")]
    InconsistentWitness { lhs: String, rhs: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// A certified equivalence `θ₂ = matrix·θ₁`.
///
/// `scaling_theta` is the multiplier carrying `ℤθ₁ + ℤ` onto `ℤθ₂ + ℤ`; it
/// is rational (`±1`) exactly when the two lattices coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaWitness {
    pub matrix: Mat2Z,
    pub scaling_theta: QuadValue,
    pub tail_indices: Option<(usize, usize)>,
}

impl MoritaWitness {
    /// Builds the witness for `matrix` and checks every invariant.
    pub fn from_matrix(matrix: Mat2Z, theta1: &QuadIrr, theta2: &QuadIrr) -> Result<Self, MoritaError> {
        let scaling_theta = solve_scaling(&matrix.inverse(), theta1, theta2)?;
        let w = MoritaWitness {
            matrix,
            scaling_theta,
            tail_indices: None,
        };
        w.verify(theta1, theta2)?;
        Ok(w)
    }

    /// Checks `matrix·θ₁ = θ₂`, `|det| = 1` and the coset correspondence.
    pub fn verify(&self, theta1: &QuadIrr, theta2: &QuadIrr) -> Result<(), MoritaError> {
        if !self.matrix.det().abs().is_one() {
            return Err(MoritaError::InvalidWitness(format!("det {} ≠ ±1", self.matrix.det())));
        }
        if theta1.discriminant() != theta2.discriminant() {
            return Err(QuadError::MixedDiscriminant(theta1.discriminant().clone(), theta2.discriminant().clone()).into());
        }
        let image = mobius_apply(&self.matrix, theta1);
        if &image != theta2 {
            return Err(MoritaError::InvalidWitness(format!("{} maps {} to {}, not {}", self.matrix, theta1, image, theta2)));
        }
        if !cosets_correspond(theta1, theta2, &self.scaling_theta)? {
            return Err(MoritaError::InvalidWitness(format!(
                "scaling {} does not carry Zθ₁+Z onto Zθ₂+Z",
                self.scaling_theta
            )));
        }
        Ok(())
    }

    /// The witness for `θ₂ → θ₁`.
    pub fn inverse(&self) -> Result<MoritaWitness, MoritaError> {
        Ok(MoritaWitness {
            matrix: self.matrix.inverse(),
            scaling_theta: self.scaling_theta.recip()?,
            tail_indices: self.tail_indices.map(|(i, j)| (j, i)),
        })
    }

    /// `self: θ₁ → θ₂` followed by `next: θ₂ → θ₃`.
    pub fn compose(&self, next: &MoritaWitness) -> Result<MoritaWitness, MoritaError> {
        Ok(MoritaWitness {
            matrix: &next.matrix * &self.matrix,
            scaling_theta: self.scaling_theta.checked_mul(&next.scaling_theta)?,
            tail_indices: None,
        })
    }
}

/// Why two parameters are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    DifferentFields { d1: BigInt, d2: BigInt },
    DifferentTails { cf1: CfExpansion, cf2: CfExpansion },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::DifferentFields { d1, d2 } => write!(f, "different fields: sqrt({}) vs sqrt({})", d1, d2),
            Evidence::DifferentTails { cf1, cf2 } => write!(f, "different tails: {} vs {}", cf1, cf2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoritaDecision {
    Equivalent(MoritaWitness),
    NotEquivalent(Evidence),
}

impl MoritaDecision {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, MoritaDecision::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&MoritaWitness> {
        match self {
            MoritaDecision::Equivalent(w) => Some(w),
            MoritaDecision::NotEquivalent(_) => None,
        }
    }
}

/// Decides whether `θ₂ = (aθ₁ + b)/(cθ₁ + d)` for some `|ad − bc| = 1`.
///
/// With `i`, `j` the preperiod lengths, the complete quotients `x₁ᵢ` and
/// `x₂ⱼ` are purely periodic with the canonical period, so equal periods
/// mean `x₁ᵢ = x₂ⱼ` and the witness is `C₂ⱼ · C₁ᵢ⁻¹`.
pub fn decide_morita(theta1: &QuadIrr, theta2: &QuadIrr) -> Result<MoritaDecision, MoritaError> {
    let (d1, d2) = (theta1.discriminant(), theta2.discriminant());
    if d1 != d2 {
        return Ok(MoritaDecision::NotEquivalent(Evidence::DifferentFields {
            d1: d1.clone(),
            d2: d2.clone(),
        }));
    }
    let (cf1, cf2) = (cf_expand(theta1), cf_expand(theta2));
    if cf1.period() != cf2.period() {
        return Ok(MoritaDecision::NotEquivalent(Evidence::DifferentTails { cf1, cf2 }));
    }
    let (i, j) = (cf1.tail_start(), cf2.tail_start());
    let matrix = &convergent_matrix(&cf2, j) * &convergent_matrix(&cf1, i).inverse();
    let mut witness = MoritaWitness::from_matrix(matrix, theta1, theta2)?;
    witness.tail_indices = Some((i, j));
    Ok(MoritaDecision::Equivalent(witness))
}

/// Lattice scaling for `n = [[a, b], [c, d]]` acting `θ₂ → θ₁`:
/// `θ = cθ₂ + d`, checked against `(aθ₂ + b)/θ₁`.
pub fn solve_scaling(n: &Mat2Z, theta1: &QuadIrr, theta2: &QuadIrr) -> Result<QuadValue, MoritaError> {
    let t1 = QuadValue::from(theta1.clone());
    let t2 = QuadValue::from(theta2.clone());
    t1.common_discriminant(&t2)?;
    let affine = |x: &BigInt, y: &BigInt| -> Result<QuadValue, QuadError> {
        t2.scale(x).checked_add(&QuadValue::from_integer(y.clone()))
    };
    let theta = affine(n.c(), n.d())?;
    let check = affine(n.a(), n.b())?.checked_div(&t1)?;
    if theta != check {
        return Err(MoritaError::InconsistentWitness {
            lhs: check.to_string(),
            rhs: theta.to_string(),
        });
    }
    Ok(theta)
}

/// `θ₂ = (dθ₁ − b)/(−cθ₁ + a)`, i.e. `θ₂` recovered from `n = [[a, b], [c, d]]`
/// acting `θ₂ → θ₁`.
pub fn theta2_from_inverse(n: &Mat2Z, theta1: &QuadIrr) -> QuadIrr {
    let m = Mat2Z::new(n.d().clone(), -n.b(), -n.c(), n.a().clone()).expect("adjugate keeps |det| = 1");
    mobius_apply(&m, theta1)
}

/// Exhaustive search for `M` with entries in `[−bound, bound]`,
/// `|det M| = 1` and `M·θ₁ = θ₂`.
///
/// `M` and `−M` act identically, so only the sign normal form `c > 0` or
/// `(c = 0, d > 0)` is enumerated; among those the lexicographically least
/// `(a, b, c, d)` is returned. For each `(c, d)` the pair `(a, b)` is forced
/// by `θ₂(cθ₁ + d) = aθ₁ + b`, which makes the search quadratic in `bound`.
pub fn brute_force_search(theta1: &QuadIrr, theta2: &QuadIrr, bound: u64) -> Option<Mat2Z> {
    if theta1.discriminant() != theta2.discriminant() {
        return None;
    }
    let bound = BigInt::from(bound);
    let (p1, q1, r1) = (theta1.p(), theta1.q(), theta1.r());
    let (p2, q2, r2) = (theta2.p(), theta2.q(), theta2.r());
    let disc = theta1.discriminant();
    // θ₂(cθ₁ + d)·r₁r₂ = c·(s0 + s1√D) + d·r₁·(p₂ + q₂√D)
    let s0 = p1 * p2 + q1 * q2 * disc;
    let s1 = p1 * q2 + p2 * q1;
    let (t0, t1) = (r1 * p2, r1 * q2);
    let (m_den, n_den) = (r2 * q1, r1 * r2);
    let mut best: Option<(BigInt, BigInt, BigInt, BigInt)> = None;
    let mut c = BigInt::zero();
    while c <= bound {
        let mut d = if c.is_zero() { BigInt::one() } else { -bound.clone() };
        while d <= bound {
            let w1 = &c * &s1 + &d * &t1;
            if w1.is_multiple_of(&m_den) {
                let a = &w1 / &m_den;
                let rest = &c * &s0 + &d * &t0 - &a * p1 * r2;
                if rest.is_multiple_of(&n_den) {
                    let b = rest / &n_den;
                    let det = &a * &d - &b * &c;
                    if a.abs() <= bound && b.abs() <= bound && det.abs().is_one() {
                        let cand = (a, b, c.clone(), d.clone());
                        if best.as_ref().map_or(true, |cur| &cand < cur) {
                            best = Some(cand);
                        }
                    }
                }
            }
            d += 1;
        }
        c += 1;
    }
    best.map(|(a, b, c, d)| Mat2Z::new(a, b, c, d).expect("determinant checked"))
}
