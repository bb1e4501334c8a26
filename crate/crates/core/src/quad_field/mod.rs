//! Exact arithmetic in real quadratic fields.
//!
//! [`QuadIrr`] is a canonical `(p + q√D)/r`, [`QuadValue`] is an element of
//! `ℚ(√D)` that demotes itself to a [`Rational`] whenever the surd part
//! vanishes. Continued fractions live in [`cf`], `GL₂(ℤ)` matrices and the
//! Möbius action in [`matrix`], and the text grammar in [`parse`].

pub mod cf;
pub mod matrix;
mod number;
pub mod parse;

pub use cf::{cf_expand, complete_quotient, convergent_matrix, CfExpansion};
pub use matrix::{mobius_apply, Mat2Z};
pub use number::{quad_arith, quad_normalize, squarefree_split, ArithOp, QuadIrr, QuadValue};

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational input: {0} is not a quadratic irrational")]
    RationalValue(Rational),
    #[error("discriminant must be positive, got {0}")]
    NonPositiveDiscriminant(BigInt),
    #[error("mixed discriminants: sqrt({0}) and sqrt({1}) live in different fields")]
    MixedDiscriminant(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix determinant is {0}, expected ±1")]
    NotUnimodular(BigInt),
    #[error("invalid continued fraction: {0}")]
    InvalidExpansion(String),
    #[error("parse error: {0}")]
    Parse(String),
}
