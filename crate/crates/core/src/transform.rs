//! The geometric transformation `L_θ` between two equivalent tori.
//!
//! Representatives are exponents `α ∈ ℚ(√D)` of points `exp(2πiα)`. A
//! source pair `(α_u, α_v)` goes to `(θα_u, θα_v)`, which is `C_θ`-related
//! to it with trivial integer shifts. On bases,
//! `q₁^{nl}·u(q₁ⁿu, v) ↦ q₂^{nl}·u(q₂ⁿu', v')`, and coefficient symbols are
//! carried along by `q₁ → q₂, u → u', v → v'`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coset_model::{ctheta_related, lattice_coordinates, CosetError, ExpPoint};
use crate::morita::{MoritaError, MoritaWitness};
use crate::quad_field::{QuadError, QuadIrr, QuadValue};
use crate::report::Report;
use crate::torus_core::{
    pairing, pairing_extended, Basis, CanonicalBasisElem, Monomial, Operator, PairingValue, RepPair, Torus,
    TorusElement, TorusError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("invalid witness: {0}")]
    InvalidWitness(#[from] MoritaError),
    #[error("source and target tori share the symbol {0}")]
    SameTorus(String),
    #[error("representatives {0} and {1} name the same pair of cosets")]
    DuplicateCoset(String, String),
    #[error("representative pair {0} is not in the working universe")]
    UnmappedRepresentative(RepPair),
    #[error("{0} is not a canonical basis element")]
    NotCanonical(String),
    #[error("image of {0} is not C_θ-related to it")]
    Uncertified(String),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// Which coefficients `L_θ` accepts on the `U`-bundle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientMode {
    /// Only `q^{nl}·u(qⁿu, v)`.
    #[default]
    Canonical,
    /// Any `q^m·u(qⁿu, v)`.
    General,
}

/// One representative pair as exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPair {
    pub alpha_u: QuadValue,
    pub alpha_v: QuadValue,
}

impl ExpPair {
    pub fn new(alpha_u: impl Into<QuadValue>, alpha_v: impl Into<QuadValue>) -> Self {
        ExpPair {
            alpha_u: alpha_u.into(),
            alpha_v: alpha_v.into(),
        }
    }

    /// Identifiers are the rendered exponents.
    pub fn rep(&self) -> RepPair {
        RepPair::new(self.alpha_u.to_string(), self.alpha_v.to_string()).expect("rendered values are identifiers")
    }

    fn scaled(&self, theta: &QuadValue) -> Result<ExpPair, QuadError> {
        Ok(ExpPair::new(theta.checked_mul(&self.alpha_u)?, theta.checked_mul(&self.alpha_v)?))
    }
}

/// Five pairs over `ℚ(√d)` with pairwise distinct cosets for any irrational
/// `θ₁` in that field.
pub fn default_universe(d: u64) -> Vec<ExpPair> {
    let q = |s: String| s.parse::<QuadValue>().expect("valid literal");
    vec![
        ExpPair::new(q("0".into()), q("0".into())),
        ExpPair::new(q("1/3".into()), q("1/5".into())),
        ExpPair::new(q("1/2".into()), q("1/7".into())),
        ExpPair::new(q(format!("sqrt({})/3", d)), q("2/5".into())),
        ExpPair::new(q("3/7".into()), q(format!("1/11+sqrt({})/13", d))),
    ]
}

/// `L_θ` on a finite universe of representative pairs.
#[derive(Clone, Debug)]
pub struct GeoTransform {
    pub source: Torus,
    pub target: Torus,
    pub theta1: QuadIrr,
    pub theta2: QuadIrr,
    pub witness: MoritaWitness,
    pub mode: CoefficientMode,
    pairs: BTreeMap<RepPair, RepPair>,
    universe: Vec<(ExpPair, ExpPair)>,
}

fn same_coset(x: &QuadValue, y: &QuadValue, theta: &QuadIrr) -> Result<bool, CosetError> {
    Ok(lattice_coordinates(&x.checked_sub(y)?, theta)?.is_some())
}

/// Builds `L_θ` between tori tagged `q1` and `q2`.
pub fn build_transform(
    theta1: &QuadIrr,
    theta2: &QuadIrr,
    witness: &MoritaWitness,
    universe: &[ExpPair],
) -> Result<GeoTransform, TransformError> {
    build_transform_between(&Torus::new("q1"), &Torus::new("q2"), theta1, theta2, witness, universe)
}

pub fn build_transform_between(
    source: &Torus,
    target: &Torus,
    theta1: &QuadIrr,
    theta2: &QuadIrr,
    witness: &MoritaWitness,
    universe: &[ExpPair],
) -> Result<GeoTransform, TransformError> {
    if source == target {
        return Err(TransformError::SameTorus(source.tag().to_string()));
    }
    witness.verify(theta1, theta2)?;
    let theta = &witness.scaling_theta;
    for (i, x) in universe.iter().enumerate() {
        for y in &universe[..i] {
            if same_coset(&x.alpha_u, &y.alpha_u, theta1)? && same_coset(&x.alpha_v, &y.alpha_v, theta1)? {
                return Err(TransformError::DuplicateCoset(x.rep().to_string(), y.rep().to_string()));
            }
        }
    }
    let mut pairs = BTreeMap::new();
    let mut mapped = Vec::new();
    for x in universe {
        let y = x.scaled(theta)?;
        for (a, b) in [(&x.alpha_u, &y.alpha_u), (&x.alpha_v, &y.alpha_v)] {
            if !ctheta_related(&ExpPoint::new(a.clone()), &ExpPoint::new(b.clone()), theta)? {
                return Err(TransformError::Uncertified(a.to_string()));
            }
        }
        pairs.insert(x.rep(), y.rep());
        mapped.push((x.clone(), y));
    }
    Ok(GeoTransform {
        source: source.clone(),
        target: target.clone(),
        theta1: theta1.clone(),
        theta2: theta2.clone(),
        witness: witness.clone(),
        mode: CoefficientMode::Canonical,
        pairs,
        universe: mapped,
    })
}

impl GeoTransform {
    pub fn with_mode(mut self, mode: CoefficientMode) -> Self {
        self.mode = mode;
        self
    }

    /// Source and target exponent pairs, in universe order.
    pub fn universe(&self) -> &[(ExpPair, ExpPair)] {
        &self.universe
    }

    pub fn source_reps(&self) -> impl Iterator<Item = &RepPair> + '_ {
        self.pairs.keys()
    }

    pub fn map_rep(&self, rep: &RepPair) -> Result<RepPair, TransformError> {
        self.pairs
            .get(rep)
            .cloned()
            .ok_or_else(|| TransformError::UnmappedRepresentative(rep.clone()))
    }

    pub fn apply_l(&self, e: &CanonicalBasisElem) -> Result<CanonicalBasisElem, TransformError> {
        if e.torus != self.source {
            return Err(TorusError::TorusMismatch(e.torus.to_string(), self.source.to_string()).into());
        }
        Ok(CanonicalBasisElem::new(&self.target, &self.map_rep(&e.rep)?, e.n, e.l))
    }

    /// `L_θ` on a single `Γ`-multiple of a `U`-bundle generator.
    pub fn apply_l_term(&self, x: &TorusElement) -> Result<TorusElement, TransformError> {
        let bad = || TransformError::NotCanonical(x.to_string());
        let t = x.single_term().ok_or_else(bad)?;
        let n = match &t.basis {
            Basis::U(b) if t.coeff.is_gamma() => b.gamma_exp,
            _ => return Err(bad()),
        };
        let e = t.coeff.qexp();
        let canonical = if n == 0 { e == 0 } else { e % n == 0 };
        if self.mode == CoefficientMode::Canonical && !canonical {
            return Err(bad());
        }
        self.transport(x)
    }

    /// Substitution `q₁ → q₂, u → u', v → v'` on every term.
    pub fn transport(&self, x: &TorusElement) -> Result<TorusElement, TransformError> {
        if x.torus() != &self.source {
            return Err(TorusError::TorusMismatch(x.torus().to_string(), self.source.to_string()).into());
        }
        let mut missing = None;
        let out = x.retag(&self.target, |rep| {
            let image = self.pairs.get(rep).cloned();
            if image.is_none() {
                missing = Some(rep.clone());
            }
            image
        });
        out.ok_or_else(|| TransformError::UnmappedRepresentative(missing.expect("retag failed on a representative")))
    }

    /// `self` followed by `next`, on the shared universe.
    pub fn then(&self, next: &GeoTransform) -> Result<GeoTransform, TransformError> {
        if self.target != next.source {
            return Err(TorusError::TorusMismatch(self.target.to_string(), next.source.to_string()).into());
        }
        let mut pairs = BTreeMap::new();
        let mut universe = Vec::new();
        for (x, y) in &self.universe {
            let z = next
                .universe
                .iter()
                .find(|(a, _)| a == y)
                .map(|(_, z)| z.clone())
                .ok_or_else(|| TransformError::UnmappedRepresentative(y.rep()))?;
            pairs.insert(x.rep(), z.rep());
            universe.push((x.clone(), z));
        }
        Ok(GeoTransform {
            source: self.source.clone(),
            target: next.target.clone(),
            theta1: self.theta1.clone(),
            theta2: next.theta2.clone(),
            witness: self.witness.compose(&next.witness)?,
            mode: self.mode,
            pairs,
            universe,
        })
    }

    fn check_diagram(&self, op: Operator, n_range: i64) -> Report {
        let mut report = Report::new();
        for rep in self.pairs.keys() {
            for n in -n_range..=n_range {
                for l in -1..=1 {
                    let e = CanonicalBasisElem::new(&self.source, rep, n, l);
                    let case = format!("diagram {:?} rep={} n={} l={}", op, rep, n, l);
                    let lhs = self.transport(&e.to_element().apply(op));
                    let rhs = self.apply_l(&e).map(|img| img.to_element().apply(op));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => report.compare(case, l, r),
                        (l, r) => report.fail(case, format!("{:?}", l.err()), format!("{:?}", r.err())),
                    }
                }
            }
        }
        report
    }

    /// `L∘U = U∘L` on `u(q₁ⁿu, v)` and its canonical multiples.
    pub fn check_diagram_u(&self, n_range: i64) -> Report {
        self.check_diagram(Operator::U, n_range)
    }

    /// `L∘V = V∘L` on `u(q₁ⁿu, v)` and its canonical multiples.
    pub fn check_diagram_v(&self, n_range: i64) -> Report {
        self.check_diagram(Operator::V, n_range)
    }

    /// Pairing exponents of transported generators against the source on
    /// `(s, m, r, k) ∈ [−range, range]⁴`, both orders, plus the axiom pair
    /// and its `UʳVˢ` shifts.
    pub fn check_pairing_preserved(&self, range: i64) -> Report {
        let mut report = Report::new();
        let span = || -range..=range;
        let show = |p: Result<PairingValue, TransformError>| match p {
            Ok(v) => v.to_string(),
            Err(e) => format!("error({})", e),
        };
        let transported = |x: &TorusElement, y: &TorusElement, extended: bool| -> Result<PairingValue, TransformError> {
            let (tx, ty) = (self.transport(x)?, self.transport(y)?);
            Ok(if extended { pairing_extended(&tx, &ty)? } else { pairing(&tx, &ty)? })
        };
        let direct = |x: &TorusElement, y: &TorusElement, extended: bool| -> Result<PairingValue, TransformError> {
            Ok(if extended { pairing_extended(x, y)? } else { pairing(x, y)? })
        };
        for rep in self.pairs.keys() {
            let u0 = TorusElement::basis_u(&self.source, rep, 0);
            let v0 = TorusElement::basis_v(&self.source, rep, 0);
            for (name, x, y) in [("<u|v>", &u0, &v0), ("<v|u>", &v0, &u0)] {
                let case = format!("pairing axiom1 {} rep={}", name, rep);
                report.compare(case, show(transported(x, y, false)), show(direct(x, y, false)));
            }
            for r in span() {
                for s in span() {
                    let shift = |x: &TorusElement| x.apply_power(Operator::V, s).apply_power(Operator::U, r);
                    let (x, y) = (shift(&u0), shift(&v0));
                    let case = format!("pairing axiom2 rep={} r={} s={}", rep, r, s);
                    report.compare(case, show(transported(&x, &y, true)), show(direct(&x, &y, true)));
                }
            }
        }
        let rep = self.pairs.keys().next();
        for rep in rep.into_iter() {
            for s in span() {
                for m in span() {
                    for r in span() {
                        for k in span() {
                            let v = TorusElement::from_term(&self.source, Monomial::q_pow(s), Basis::v(rep.clone(), m));
                            let u = TorusElement::from_term(&self.source, Monomial::q_pow(r), Basis::u(rep.clone(), k));
                            for (order, x, y) in [("VU", &v, &u), ("UV", &u, &v)] {
                                let case = format!("pairing {} rep={} s={} m={} r={} k={}", order, rep, s, m, r, k);
                                report.compare(case, show(transported(x, y, false)), show(direct(x, y, false)));
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Both diagrams on `[−n_range, n_range]` and pairing preservation on
    /// `[−pairing_range, pairing_range]⁴`, sorted.
    pub fn verify_all(&self, n_range: i64, pairing_range: i64) -> Report {
        let mut report = self.check_diagram_u(n_range);
        report.extend(self.check_diagram_v(n_range));
        report.extend(self.check_pairing_preserved(pairing_range));
        report.sorted()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morita::decide_morita;

    fn qi(s: &str) -> QuadIrr {
        s.parse().unwrap()
    }

    fn qv(s: &str) -> QuadValue {
        s.parse().unwrap()
    }

    fn transform(t1: &str, t2: &str, universe: &[ExpPair]) -> GeoTransform {
        let (a, b) = (qi(t1), qi(t2));
        let w = decide_morita(&a, &b).unwrap().witness().cloned().unwrap();
        build_transform(&a, &b, &w, universe).unwrap()
    }

    #[test]
    fn build_examples() {
        let t = transform("sqrt(2)", "1+sqrt(2)", &[ExpPair::new(qv("0"), qv("0"))]);
        let rep = ExpPair::new(qv("0"), qv("0")).rep();
        assert_eq!(t.map_rep(&rep).unwrap(), rep);

        let t = transform("sqrt(2)", "sqrt(2)/2", &[ExpPair::new(qv("1/3"), qv("1/5"))]);
        assert_eq!(t.witness.scaling_theta, qv("sqrt(2)/2"));
        let (_, target) = &t.universe()[0];
        assert_eq!(target, &ExpPair::new(qv("sqrt(2)/6"), qv("sqrt(2)/10")));
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let (a, b) = (qi("sqrt(2)"), qi("1+sqrt(2)"));
        let mut w = decide_morita(&a, &b).unwrap().witness().cloned().unwrap();
        w.matrix = crate::quad_field::Mat2Z::new(1, 2, 0, 1).unwrap();
        assert!(matches!(
            build_transform(&a, &b, &w, &default_universe(2)),
            Err(TransformError::InvalidWitness(_))
        ));
    }

    #[test]
    fn duplicate_cosets_are_rejected() {
        let (a, b) = (qi("sqrt(2)"), qi("1+sqrt(2)"));
        let w = decide_morita(&a, &b).unwrap().witness().cloned().unwrap();
        let universe = [ExpPair::new(qv("1/3"), qv("1/5")), ExpPair::new(qv("1/3+sqrt(2)"), qv("1/5-4"))];
        assert!(matches!(
            build_transform(&a, &b, &w, &universe),
            Err(TransformError::DuplicateCoset(_, _))
        ));
        assert!(matches!(
            build_transform_between(&Torus::new("q"), &Torus::new("q"), &a, &b, &w, &universe[..1]),
            Err(TransformError::SameTorus(_))
        ));
    }

    #[test]
    fn apply_l_examples() {
        let t = transform("sqrt(2)", "sqrt(2)/2", &default_universe(2));
        let rep = default_universe(2)[1].rep();
        let image = t.apply_l(&CanonicalBasisElem::new(&t.source, &rep, 0, 0)).unwrap();
        assert_eq!(image, CanonicalBasisElem::new(&t.target, &t.map_rep(&rep).unwrap(), 0, 0));
        let image = t.apply_l(&CanonicalBasisElem::new(&t.source, &rep, 2, 3)).unwrap();
        assert_eq!(image.to_element().to_string(), "q^6 * u[2; sqrt(2)/6, sqrt(2)/10]");
        let stray = RepPair::new("x", "y").unwrap();
        assert!(matches!(
            t.apply_l(&CanonicalBasisElem::new(&t.source, &stray, 0, 0)),
            Err(TransformError::UnmappedRepresentative(_))
        ));
    }

    #[test]
    fn coefficient_modes() {
        let t = transform("sqrt(3)", "1+sqrt(3)", &default_universe(3));
        let rep = default_universe(3)[2].rep();
        let odd = TorusElement::from_term(&t.source, Monomial::q_pow(5), Basis::u(rep.clone(), 2));
        assert!(matches!(t.apply_l_term(&odd), Err(TransformError::NotCanonical(_))));
        let t = t.with_mode(CoefficientMode::General);
        assert_eq!(t.apply_l_term(&odd).unwrap().to_string(), "q^5 * u[2; 1/2, 1/7]");
    }

    #[test]
    fn diagram_examples() {
        let t = transform("sqrt(2)", "1+sqrt(2)", &default_universe(2));
        let rep = default_universe(2)[0].rep();
        let e = CanonicalBasisElem::new(&t.source, &rep, 3, 0).to_element();
        assert_eq!(t.transport(&e.apply(Operator::U)).unwrap().to_string(), "q^3 * u * u[3; 0, 0]");
        let e = CanonicalBasisElem::new(&t.source, &rep, 1, 0).to_element();
        assert_eq!(t.transport(&e.apply(Operator::V)).unwrap().to_string(), "v * u[0; 0, 0]");
        let report = t.verify_all(3, 2);
        assert!(report.is_success(), "{}", report);
    }

    #[test]
    fn composition_matches_composed_witness() {
        let (a, b, c) = (qi("sqrt(5)"), qi("(2*sqrt(5)+1)/(sqrt(5)+1)"), qi("3-sqrt(5)"));
        let wab = decide_morita(&a, &b).unwrap().witness().cloned().unwrap();
        let wbc = decide_morita(&b, &c).unwrap().witness().cloned().unwrap();
        let (q1, q2, q3) = (Torus::new("q1"), Torus::new("q2"), Torus::new("q3"));
        let first = build_transform_between(&q1, &q2, &a, &b, &wab, &default_universe(5)).unwrap();
        let middle: Vec<ExpPair> = first.universe().iter().map(|(_, y)| y.clone()).collect();
        let second = build_transform_between(&q2, &q3, &b, &c, &wbc, &middle).unwrap();
        let direct = build_transform_between(&q1, &q3, &a, &c, &wab.compose(&wbc).unwrap(), &default_universe(5)).unwrap();
        let chained = first.then(&second).unwrap();
        for rep in direct.source_reps() {
            for n in -3..=3 {
                let e = CanonicalBasisElem::new(&q1, rep, n, 2);
                assert_eq!(direct.apply_l(&e).unwrap(), chained.apply_l(&e).unwrap());
            }
        }
    }
}
