//! Exact symbolic quantum 2-tori.
//!
//! The crate builds the Γ-bundle model of a quantum 2-torus `T_θ` over a
//! free symbol `q = exp(2πiθ)`, decides whether `T_θ1` and `T_θ2` are
//! Morita equivalent for quadratic irrational parameters, constructs the
//! geometric transformation between the canonical bases of two equivalent
//! tori, and rewrites `y = x^Θ` for `Θ` in the `GL₂(ℤ)`-orbit of `θ` as a
//! single `C_θ` atom.
//!
//! Everything is exact: integers are arbitrary precision and no floating
//! point value ever takes part in a decision.

pub mod cli;
pub mod coset_model;
pub mod definability;
pub mod morita;
pub mod quad_field;
pub mod report;
pub mod torus_core;
pub mod transform;

pub use coset_model::{CosetError, CosetId, ExpPoint, Lattice};
pub use definability::AtomicFormula;
pub use morita::{MoritaDecision, MoritaError, MoritaWitness};
pub use quad_field::{CfExpansion, Mat2Z, QuadError, QuadIrr, QuadValue, Rational};
pub use report::Report;
pub use torus_core::{Torus, TorusElement, TorusError};
pub use transform::{GeoTransform, TransformError};
