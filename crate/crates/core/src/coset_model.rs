//! Exponent-level model of the unit circle in `ℂ*`.
//!
//! A point `exp(2πiα)` is stored as its exponent `α ∈ ℚ(√D)`. The group
//! `Γ_q = q^ℤ` with `q = exp(2πiθ)` becomes the lattice `ℤθ + ℤ` (the `ℤ`
//! comes from `exp` collapsing integers), and `y = x^θ` becomes
//! `β ∈ θ·(α + ℤ) + ℤ`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::quad_field::{QuadError, QuadIrr, QuadValue, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("internal degeneracy: linear system over {{1, sqrt(D)}} is singular")]
    InternalDegeneracy,
}

/// The point `exp(2πi·alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpPoint {
    pub alpha: QuadValue,
}

impl ExpPoint {
    pub fn new(alpha: impl Into<QuadValue>) -> Self {
        ExpPoint { alpha: alpha.into() }
    }

    pub fn one() -> Self {
        ExpPoint::new(QuadValue::zero())
    }

    /// `x^n`, i.e. `n·α`.
    pub fn pow(&self, n: &BigInt) -> ExpPoint {
        ExpPoint::new(self.alpha.scale(n))
    }

    /// `x·y`, i.e. `α + β`.
    pub fn mul(&self, other: &ExpPoint) -> Result<ExpPoint, CosetError> {
        Ok(ExpPoint::new(self.alpha.checked_add(&other.alpha)?))
    }
}

/// The rank-2 subgroup `ℤ·theta + ℤ` of `ℝ`.
#[derive(Clone, Debug, Eq, Hash)]
pub struct Lattice {
    pub theta: QuadIrr,
}

impl Lattice {
    pub fn new(theta: QuadIrr) -> Self {
        Lattice { theta }
    }

    pub fn contains(&self, xi: &QuadValue) -> Result<bool, CosetError> {
        lattice_member(xi, self)
    }
}

/// Same subgroup of `ℝ`; lattices over different fields are never equal.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (QuadValue::from(self.theta.clone()), QuadValue::from(other.theta.clone()));
        matches!(lattice_member(&a, other), Ok(true)) && matches!(lattice_member(&b, self), Ok(true))
    }
}

/// The coset `exp(2πi(rep_alpha + lattice))`.
#[derive(Clone, Debug)]
pub struct CosetId {
    pub lattice: Lattice,
    pub rep_alpha: QuadValue,
}

impl CosetId {
    pub fn new(lattice: Lattice, rep_alpha: impl Into<QuadValue>) -> Self {
        CosetId {
            lattice,
            rep_alpha: rep_alpha.into(),
        }
    }

    pub fn contains(&self, alpha: &QuadValue) -> Result<bool, CosetError> {
        lattice_member(&alpha.checked_sub(&self.rep_alpha)?, &self.lattice)
    }
}

impl PartialEq for CosetId {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && matches!(self.contains(&other.rep_alpha), Ok(true))
    }
}

fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

/// Integer coordinates `(m, n)` with `xi = m·theta + n`, if they exist.
///
/// Solved in the `ℚ`-basis `{1, √D}`: the surd coordinate fixes `m`, the
/// rational one then fixes `n`. The solution is unique because `theta` is
/// irrational.
pub fn lattice_coordinates(xi: &QuadValue, theta: &QuadIrr) -> Result<Option<(BigInt, BigInt)>, CosetError> {
    let theta_v = QuadValue::from(theta.clone());
    xi.common_discriminant(&theta_v)?;
    let (x0, x1) = xi.coords();
    let (t0, t1) = theta.coords();
    if t1.is_zero() {
        return Err(CosetError::InternalDegeneracy);
    }
    let m = x1 / t1;
    let n = x0 - &m * t0;
    if is_integer(&m) && is_integer(&n) {
        Ok(Some((m.to_integer(), n.to_integer())))
    } else {
        Ok(None)
    }
}

/// Is `xi ∈ ℤ·theta + ℤ`?
pub fn lattice_member(xi: &QuadValue, lattice: &Lattice) -> Result<bool, CosetError> {
    Ok(lattice_coordinates(xi, &lattice.theta)?.is_some())
}

/// Is `xi ∈ ℤ·scale + ℤ` for an arbitrary nonzero `scale ∈ ℚ(√D)`?
///
/// For rational `scale = a/b` in lowest terms the span is `(1/b)·ℤ`.
pub(crate) fn span_member(xi: &QuadValue, scale: &QuadValue) -> Result<bool, CosetError> {
    xi.common_discriminant(scale)?;
    match scale {
        QuadValue::Irrational(t) => lattice_member(xi, &Lattice::new(t.clone())),
        QuadValue::Rational(a) => match xi {
            QuadValue::Irrational(_) => Ok(false),
            QuadValue::Rational(x) => Ok((x * Rational::from_integer(a.denom().clone())).is_integer()),
        },
    }
}

/// `C_θ(x, y)`: is there `k, n ∈ ℤ` with `β = θ·(α + k) + n`?
///
/// Equivalently `β − θ·α ∈ ℤθ + ℤ`. `theta` is normally irrational; a
/// rational `±1` scaling (coinciding lattices) is accepted as well.
pub fn ctheta_related(x: &ExpPoint, y: &ExpPoint, theta: &QuadValue) -> Result<bool, CosetError> {
    x.alpha.common_discriminant(&y.alpha)?;
    let diff = y.alpha.checked_sub(&theta.checked_mul(&x.alpha)?)?;
    span_member(&diff, theta)
}

/// Entries `(a, b, c, d)` with `θ·θ₁ = a·θ₂ + b` and `θ = c·θ₂ + d`, when all
/// four are integers.
pub fn coordinate_matrix(
    theta1: &QuadIrr,
    theta2: &QuadIrr,
    theta: &QuadValue,
) -> Result<Option<[BigInt; 4]>, CosetError> {
    let scaled = theta.checked_mul(&QuadValue::from(theta1.clone()))?;
    let first = lattice_coordinates(&scaled, theta2)?;
    let second = lattice_coordinates(theta, theta2)?;
    Ok(match (first, second) {
        (Some((a, b)), Some((c, d))) => Some([a, b, c, d]),
        _ => None,
    })
}

/// Does multiplication by `theta` carry `ℤθ₁ + ℤ` onto `ℤθ₂ + ℤ`?
///
/// Tested as `θ·θ₁, θ ∈ L₂` and `θ₂/θ, 1/θ ∈ L₁`.
pub fn cosets_correspond(theta1: &QuadIrr, theta2: &QuadIrr, theta: &QuadValue) -> Result<bool, CosetError> {
    let (l1, l2) = (Lattice::new(theta1.clone()), Lattice::new(theta2.clone()));
    let t1 = QuadValue::from(theta1.clone());
    let t2 = QuadValue::from(theta2.clone());
    t1.common_discriminant(&t2)?;
    t1.common_discriminant(theta)?;
    if theta.is_zero() {
        return Ok(false);
    }
    let inv = theta.recip()?;
    Ok(lattice_member(&theta.checked_mul(&t1)?, &l2)?
        && lattice_member(theta, &l2)?
        && lattice_member(&t2.checked_mul(&inv)?, &l1)?
        && lattice_member(&inv, &l1)?)
}

/// Image of the `Γ_{q₁}`-coset `a` under `C_θ`: the `Γ_{q₂}`-coset of
/// `θ·a.rep_alpha`, or `None` when `θ` does not induce a coset correspondence.
pub fn coset_image(a: &CosetId, theta: &QuadValue, l2: &Lattice) -> Result<Option<CosetId>, CosetError> {
    if !cosets_correspond(&a.lattice.theta, &l2.theta, theta)? {
        return Ok(None);
    }
    Ok(Some(CosetId::new(l2.clone(), theta.checked_mul(&a.rep_alpha)?)))
}

/// `|det|` of a coordinate matrix, for diagnostics.
pub fn abs_det(m: &[BigInt; 4]) -> BigInt {
    (&m[0] * &m[3] - &m[1] * &m[2]).abs()
}
