//! Symbolic Γ-bundles of a quantum 2-torus.
//!
//! Basis vectors `u(qᵏu, v)` and `v(qᵐv, u)` carry Laurent-monomial
//! coefficients `c·qᵃuᵇvᶜ` in free symbols of infinite order, so every
//! operator identity reduces to exponent bookkeeping. The `u` and `v` of a
//! coefficient always refer to the representative pair of the basis vector
//! it multiplies.
//!
//! Representatives are opaque identifiers ([`RepPair`]); nothing depends on
//! which point of a `Γ`-coset was chosen.

mod element;
mod pairing;
mod render;
pub mod verify;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use element::{
    apply_u, apply_uinv, apply_v, apply_vinv, canonical_basis_elem, Basis, BasisU, BasisV,
    CanonicalBasisElem, Monomial, Operator, Term, TorusElement,
};
pub use pairing::{pairing, pairing_extended, PairingValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("pairing undefined between representatives {left} and {right}")]
    UndefinedPairing { left: RepPair, right: RepPair },
    #[error("coefficient {0} is not in Γ")]
    NotGammaCoefficient(String),
    #[error("pairing needs single terms, got {0} terms")]
    NotSingleTerm(usize),
    #[error("pairing needs one U-side and one V-side generator")]
    SameBundle,
    #[error("elements of different tori {0} and {1}")]
    TorusMismatch(String, String),
    #[error("monomial scalar must be nonzero")]
    ZeroScalar,
    #[error("invalid representative identifier {0:?}")]
    InvalidIdentifier(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Handle for one torus `T_θ`; its tag names the `q` symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Torus {
    tag: Arc<str>,
}

impl Torus {
    pub fn new(tag: impl Into<Arc<str>>) -> Self {
        Torus { tag: tag.into() }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub(crate) fn ensure_same(&self, other: &Torus) -> Result<(), TorusError> {
        if self == other {
            Ok(())
        } else {
            Err(TorusError::TorusMismatch(self.tag.to_string(), other.tag.to_string()))
        }
    }
}

impl fmt::Display for Torus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag)
    }
}

/// A pair of representatives `⟨u, v⟩ ∈ Φ²`, compared by identifier only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepPair {
    uid: Arc<str>,
    vid: Arc<str>,
}

fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | ';' | '[' | ']'))
}

impl RepPair {
    pub fn new(uid: impl Into<Arc<str>>, vid: impl Into<Arc<str>>) -> Result<Self, TorusError> {
        let (uid, vid) = (uid.into(), vid.into());
        for id in [&uid, &vid] {
            if !valid_identifier(id) {
                return Err(TorusError::InvalidIdentifier(id.to_string()));
            }
        }
        Ok(RepPair { uid, vid })
    }

    pub fn uid(&self) -> &str {
        &self.uid
    }

    pub fn vid(&self) -> &str {
        &self.vid
    }
}

impl fmt::Display for RepPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.uid, self.vid)
    }
}
