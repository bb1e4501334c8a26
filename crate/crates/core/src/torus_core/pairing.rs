use std::fmt;

use super::{Basis, Monomial, Term, TorusElement, TorusError};

/// A pairing value `q^exponent ∈ Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingValue {
    pub exponent: i64,
}

impl PairingValue {
    pub fn inverse(self) -> PairingValue {
        PairingValue {
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.exponent)
    }
}

fn single(x: &TorusElement) -> Result<Term, TorusError> {
    x.single_term().ok_or(TorusError::NotSingleTerm(x.len()))
}

/// Checks torus, bundle sides and representatives; returns the two terms.
fn pairable(left: &TorusElement, right: &TorusElement) -> Result<(Term, Term), TorusError> {
    left.torus().ensure_same(right.torus())?;
    let (l, r) = (single(left)?, single(right)?);
    match (&l.basis, &r.basis) {
        (Basis::U(_), Basis::V(_)) | (Basis::V(_), Basis::U(_)) => {}
        _ => return Err(TorusError::SameBundle),
    }
    if l.basis.rep() != r.basis.rep() {
        return Err(TorusError::UndefinedPairing {
            left: l.basis.rep().clone(),
            right: r.basis.rep().clone(),
        });
    }
    Ok((l, r))
}

/// Exponent of `⟨BL | BR⟩` for bare generators:
/// `⟨v(qᵐv,u) | u(qᵏu,v)⟩ = q^{−km}` and `⟨u(qᵏu,v) | v(qᵐv,u)⟩ = q^{km}`.
fn generator_exponent(left: &Basis, right: &Basis) -> i64 {
    match (left, right) {
        (Basis::V(v), Basis::U(u)) => -u.gamma_exp * v.gamma_exp,
        (Basis::U(u), Basis::V(v)) => u.gamma_exp * v.gamma_exp,
        _ => unreachable!("checked by pairable"),
    }
}

/// The pairing on `(V × U) ∪ (U × V)`:
///
/// ```text
/// ⟨qˢ v(qᵐv,u) | qʳ u(qᵏu,v)⟩ = q^{r − s − km}
/// ⟨qʳ u(qᵏu,v) | qˢ v(qᵐv,u)⟩ = q^{km + s − r}
/// ```
///
/// Both sides must be single generators of the same representative pair
/// with coefficients in `Γ`.
pub fn pairing(left: &TorusElement, right: &TorusElement) -> Result<PairingValue, TorusError> {
    let (l, r) = pairable(left, right)?;
    for t in [&l, &r] {
        if !t.coeff.is_gamma() {
            return Err(TorusError::NotGammaCoefficient(super::render::monomial_string(&t.coeff)));
        }
    }
    Ok(PairingValue {
        exponent: r.coeff.qexp() - l.coeff.qexp() + generator_exponent(&l.basis, &r.basis),
    })
}

/// The pairing extended to `ℂ*`-coefficients by coefficient extraction,
/// `⟨c₁·B₁ | c₂·B₂⟩ = c₁⁻¹c₂ ⟨B₁ | B₂⟩`.
///
/// Defined only when `c₁⁻¹c₂` lands in `Γ`, which is the case for the
/// `UʳVˢ`-shifted pairs of the normalization axiom.
pub fn pairing_extended(left: &TorusElement, right: &TorusElement) -> Result<PairingValue, TorusError> {
    let (l, r) = pairable(left, right)?;
    let ratio: Monomial = l.coeff.inv().mul(&r.coeff);
    if !ratio.is_gamma() {
        return Err(TorusError::NotGammaCoefficient(super::render::monomial_string(&ratio)));
    }
    Ok(PairingValue {
        exponent: ratio.qexp() + generator_exponent(&l.basis, &r.basis),
    })
}
