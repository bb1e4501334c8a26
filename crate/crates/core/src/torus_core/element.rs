use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::{RepPair, Torus, TorusError};
use crate::quad_field::Rational;

/// `scalar · q^qexp · u^uexp · v^vexp` with a nonzero rational scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    scalar: Rational,
    qexp: i64,
    uexp: i64,
    vexp: i64,
}

impl Monomial {
    pub fn new(scalar: Rational, qexp: i64, uexp: i64, vexp: i64) -> Result<Self, TorusError> {
        if scalar.is_zero() {
            return Err(TorusError::ZeroScalar);
        }
        Ok(Monomial {
            scalar,
            qexp,
            uexp,
            vexp,
        })
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// `qᵉ`, an element of `Γ`.
    pub fn q_pow(e: i64) -> Self {
        Monomial {
            scalar: Rational::one(),
            qexp: e,
            uexp: 0,
            vexp: 0,
        }
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn qexp(&self) -> i64 {
        self.qexp
    }

    pub fn uexp(&self) -> i64 {
        self.uexp
    }

    pub fn vexp(&self) -> i64 {
        self.vexp
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            scalar: &self.scalar * &other.scalar,
            qexp: self.qexp + other.qexp,
            uexp: self.uexp + other.uexp,
            vexp: self.vexp + other.vexp,
        }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            scalar: self.scalar.recip(),
            qexp: -self.qexp,
            uexp: -self.uexp,
            vexp: -self.vexp,
        }
    }

    /// True for pure `q`-powers, the coefficients the pairing accepts.
    pub fn is_gamma(&self) -> bool {
        self.scalar.is_one() && self.uexp == 0 && self.vexp == 0
    }

    fn shifted(&self, dq: i64, du: i64, dv: i64) -> Monomial {
        Monomial {
            scalar: self.scalar.clone(),
            qexp: self.qexp + dq,
            uexp: self.uexp + du,
            vexp: self.vexp + dv,
        }
    }
}

/// `u(q^gamma_exp · u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisU {
    pub rep: RepPair,
    pub gamma_exp: i64,
}

/// `v(q^gamma_exp · v, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisV {
    pub rep: RepPair,
    pub gamma_exp: i64,
}

/// A generator of either bundle; the tag keeps `M_{|u,v⟩}` and `M_{⟨v,u|}` disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    U(BasisU),
    V(BasisV),
}

impl Basis {
    pub fn u(rep: RepPair, gamma_exp: i64) -> Self {
        Basis::U(BasisU { rep, gamma_exp })
    }

    pub fn v(rep: RepPair, gamma_exp: i64) -> Self {
        Basis::V(BasisV { rep, gamma_exp })
    }

    pub fn rep(&self) -> &RepPair {
        match self {
            Basis::U(b) => &b.rep,
            Basis::V(b) => &b.rep,
        }
    }

    pub fn gamma_exp(&self) -> i64 {
        match self {
            Basis::U(b) => b.gamma_exp,
            Basis::V(b) => b.gamma_exp,
        }
    }

    pub fn with_rep(&self, rep: RepPair) -> Basis {
        match self {
            Basis::U(b) => Basis::u(rep, b.gamma_exp),
            Basis::V(b) => Basis::v(rep, b.gamma_exp),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Monomial,
    pub basis: Basis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    U,
    V,
    UInv,
    VInv,
}

impl Operator {
    pub fn inverse(self) -> Operator {
        match self {
            Operator::U => Operator::UInv,
            Operator::V => Operator::VInv,
            Operator::UInv => Operator::U,
            Operator::VInv => Operator::V,
        }
    }

    /// Action on one generator term.
    ///
    /// U and V on the U-bundle and on the V-bundle, with the inverses on the
    /// V-bundle obtained from `UU⁻¹ = VV⁻¹ = I`:
    ///
    /// ```text
    /// U   : u(qᵏu,v) ↦ qᵏu·u(qᵏu,v)      v(qᵐv,u) ↦ u·v(qᵐ⁺¹v,u)
    /// V   : u(qᵏu,v) ↦ v·u(qᵏ⁻¹u,v)      v(qᵐv,u) ↦ qᵐv·v(qᵐv,u)
    /// U⁻¹ : u(qᵏu,v) ↦ q⁻ᵏu⁻¹·u(qᵏu,v)   v(qᵐv,u) ↦ u⁻¹·v(qᵐ⁻¹v,u)
    /// V⁻¹ : u(qᵏu,v) ↦ v⁻¹·u(qᵏ⁺¹u,v)    v(qᵐv,u) ↦ q⁻ᵐv⁻¹·v(qᵐv,u)
    /// ```
    fn act(self, coeff: &Monomial, basis: &Basis) -> (Monomial, Basis) {
        match (self, basis) {
            (Operator::U, Basis::U(b)) => (coeff.shifted(b.gamma_exp, 1, 0), basis.clone()),
            (Operator::U, Basis::V(b)) => (coeff.shifted(0, 1, 0), Basis::v(b.rep.clone(), b.gamma_exp + 1)),
            (Operator::V, Basis::U(b)) => (coeff.shifted(0, 0, 1), Basis::u(b.rep.clone(), b.gamma_exp - 1)),
            (Operator::V, Basis::V(b)) => (coeff.shifted(b.gamma_exp, 0, 1), basis.clone()),
            (Operator::UInv, Basis::U(b)) => (coeff.shifted(-b.gamma_exp, -1, 0), basis.clone()),
            (Operator::UInv, Basis::V(b)) => {
                (coeff.shifted(0, -1, 0), Basis::v(b.rep.clone(), b.gamma_exp - 1))
            }
            (Operator::VInv, Basis::U(b)) => {
                (coeff.shifted(0, 0, -1), Basis::u(b.rep.clone(), b.gamma_exp + 1))
            }
            (Operator::VInv, Basis::V(b)) => (coeff.shifted(-b.gamma_exp, 0, -1), basis.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TermKey {
    basis: Basis,
    qexp: i64,
    uexp: i64,
    vexp: i64,
}

/// A finite linear combination of generators of one torus.
///
/// Terms with the same generator and the same monomial shape are merged;
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    torus: Torus,
    terms: BTreeMap<TermKey, Rational>,
}

impl TorusElement {
    pub fn zero(torus: &Torus) -> Self {
        TorusElement {
            torus: torus.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(torus: &Torus, coeff: Monomial, basis: Basis) -> Self {
        let mut x = Self::zero(torus);
        x.insert(coeff, basis);
        x
    }

    /// `u(qᵏu, v)` with coefficient 1.
    pub fn basis_u(torus: &Torus, rep: &RepPair, k: i64) -> Self {
        Self::from_term(torus, Monomial::one(), Basis::u(rep.clone(), k))
    }

    /// `v(qᵐv, u)` with coefficient 1.
    pub fn basis_v(torus: &Torus, rep: &RepPair, m: i64) -> Self {
        Self::from_term(torus, Monomial::one(), Basis::v(rep.clone(), m))
    }

    pub fn torus(&self) -> &Torus {
        &self.torus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(k, s)| Term {
            coeff: Monomial {
                scalar: s.clone(),
                qexp: k.qexp,
                uexp: k.uexp,
                vexp: k.vexp,
            },
            basis: k.basis.clone(),
        })
    }

    pub fn single_term(&self) -> Option<Term> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn insert(&mut self, coeff: Monomial, basis: Basis) {
        let key = TermKey {
            basis,
            qexp: coeff.qexp,
            uexp: coeff.uexp,
            vexp: coeff.vexp,
        };
        let sum = self.terms.get(&key).cloned().unwrap_or_else(Rational::zero) + coeff.scalar;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.torus.ensure_same(&other.torus)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.insert(t.coeff, t.basis);
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `m`.
    pub fn scale(&self, m: &Monomial) -> TorusElement {
        self.map_terms(|c, b| (c.mul(m), b.clone()))
    }

    pub fn apply(&self, op: Operator) -> TorusElement {
        self.map_terms(|c, b| op.act(c, b))
    }

    /// `Uᵉ` or `Vᵉ` (through the inverse when `e < 0`); `op` must be `U` or `V`.
    pub fn apply_power(&self, op: Operator, e: i64) -> TorusElement {
        let step = if e >= 0 { op } else { op.inverse() };
        (0..e.unsigned_abs()).fold(self.clone(), |x, _| x.apply(step))
    }

    /// Rebuilds the element term by term; used for linear maps that send
    /// generators to single terms.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Basis) -> (Monomial, Basis)) -> TorusElement {
        let mut out = TorusElement::zero(&self.torus);
        for t in self.terms() {
            let (c, b) = f(&t.coeff, &t.basis);
            out.insert(c, b);
        }
        out
    }

    /// Same terms, re-homed to another torus with the representative map `reps`.
    pub fn retag(
        &self,
        torus: &Torus,
        mut reps: impl FnMut(&RepPair) -> Option<RepPair>,
    ) -> Option<TorusElement> {
        let mut out = TorusElement::zero(torus);
        for t in self.terms() {
            let rep = reps(t.basis.rep())?;
            out.insert(t.coeff, t.basis.with_rep(rep));
        }
        Some(out)
    }
}

pub fn apply_u(x: &TorusElement) -> TorusElement {
    x.apply(Operator::U)
}

pub fn apply_v(x: &TorusElement) -> TorusElement {
    x.apply(Operator::V)
}

pub fn apply_uinv(x: &TorusElement) -> TorusElement {
    x.apply(Operator::UInv)
}

pub fn apply_vinv(x: &TorusElement) -> TorusElement {
    x.apply(Operator::VInv)
}

/// `q^{n·l} · u(qⁿu, v)`, an element of the canonical basis `E_{|u,v⟩}`.
///
/// Equality and hashing go through `(torus, rep, n, n·l)`: for `n = 0` all
/// values of `l` name the same vector.
#[derive(Clone, Debug)]
pub struct CanonicalBasisElem {
    pub torus: Torus,
    pub rep: RepPair,
    pub n: i64,
    pub l: i64,
}

impl CanonicalBasisElem {
    pub fn new(torus: &Torus, rep: &RepPair, n: i64, l: i64) -> Self {
        CanonicalBasisElem {
            torus: torus.clone(),
            rep: rep.clone(),
            n,
            l,
        }
    }

    pub fn coefficient_exp(&self) -> i64 {
        self.n * self.l
    }

    pub fn to_element(&self) -> TorusElement {
        canonical_basis_elem(&self.torus, &self.rep, self.n, self.l)
    }
}

/// `q^{n·l} · u(qⁿu, v)` as a torus element.
pub fn canonical_basis_elem(torus: &Torus, rep: &RepPair, n: i64, l: i64) -> TorusElement {
    TorusElement::from_term(torus, Monomial::q_pow(n * l), Basis::u(rep.clone(), n))
}

impl PartialEq for CanonicalBasisElem {
    fn eq(&self, other: &Self) -> bool {
        self.torus == other.torus
            && self.rep == other.rep
            && self.n == other.n
            && self.coefficient_exp() == other.coefficient_exp()
    }
}

impl Eq for CanonicalBasisElem {}

impl Hash for CanonicalBasisElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.torus.hash(state);
        self.rep.hash(state);
        self.n.hash(state);
        self.coefficient_exp().hash(state);
    }
}
