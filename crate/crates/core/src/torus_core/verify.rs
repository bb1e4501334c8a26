//! Exhaustive sweeps of the operator relations and pairing axioms.

use super::{
    pairing, pairing_extended, Basis, Monomial, Operator, RepPair, Torus, TorusElement, TorusError,
};
use crate::report::Report;

/// Five representative pairs used by the sweeps.
pub fn default_reps() -> Vec<RepPair> {
    ["0", "1/3", "1/2", "2/5", "3/7"]
        .iter()
        .zip(["0", "1/5", "1/7", "1/3", "5/11"])
        .map(|(u, v)| RepPair::new(*u, v).expect("valid identifiers"))
        .collect()
}

fn generators(torus: &Torus, reps: &[RepPair], range: i64) -> Vec<TorusElement> {
    let mut out = Vec::new();
    for rep in reps {
        for g in -range..=range {
            out.push(TorusElement::basis_u(torus, rep, g));
            out.push(TorusElement::basis_v(torus, rep, g));
        }
    }
    out
}

/// `VU = q·UV` and the four inverse identities on every generator with
/// `|γ-exponent| ≤ range`.
pub fn check_relations(torus: &Torus, reps: &[RepPair], range: i64) -> Report {
    let mut report = Report::new();
    for x in generators(torus, reps, range) {
        let vu = x.apply(Operator::U).apply(Operator::V);
        let q_uv = x.apply(Operator::V).apply(Operator::U).scale(&Monomial::q_pow(1));
        report.compare(format!("relation VU=qUV on {}", x), &vu, &q_uv);
        for (first, second, name) in [
            (Operator::UInv, Operator::U, "UU^-1=I"),
            (Operator::U, Operator::UInv, "U^-1U=I"),
            (Operator::VInv, Operator::V, "VV^-1=I"),
            (Operator::V, Operator::VInv, "V^-1V=I"),
        ] {
            report.compare(format!("relation {} on {}", name, x), x.apply(first).apply(second), &x);
        }
    }
    report
}

fn gamma_term(torus: &Torus, coeff_exp: i64, basis: Basis) -> TorusElement {
    TorusElement::from_term(torus, Monomial::q_pow(coeff_exp), basis)
}

/// Pairing exponent derived from the axioms alone, without the closed form.
///
/// For `⟨u(qᵏu,v) | v(qᵐv,u)⟩`, apply `UᵐV⁻ᵏ` to both generators of the
/// normalized pair `⟨u(u,v) | v(v,u)⟩ = 1`. This lands on `c_x·u(qᵏu,v)` and
/// `c_y·v(qᵐv,u)` whose pairing is still 1, so coefficient extraction forces
/// `⟨u(qᵏu,v) | v(qᵐv,u)⟩ = c_x·c_y⁻¹`. The `V`-first order runs the same
/// argument with the sides exchanged. Outer `Γ` coefficients are extracted
/// the same way.
pub fn axiom_reduction_exponent(
    torus: &Torus,
    rep: &RepPair,
    v_first: bool,
    s: i64,
    m: i64,
    r: i64,
    k: i64,
) -> Result<i64, TorusError> {
    let shift = |x: TorusElement| x.apply_power(Operator::V, -k).apply_power(Operator::U, m);
    let x = shift(TorusElement::basis_u(torus, rep, 0));
    let y = shift(TorusElement::basis_v(torus, rep, 0));
    let (tx, ty) = (
        x.single_term().ok_or(TorusError::NotSingleTerm(x.len()))?,
        y.single_term().ok_or(TorusError::NotSingleTerm(y.len()))?,
    );
    assert_eq!(tx.basis, Basis::u(rep.clone(), k), "shift must land on u(q^k u, v)");
    assert_eq!(ty.basis, Basis::v(rep.clone(), m), "shift must land on v(q^m v, u)");
    let (left, right) = if v_first { (&ty, &tx) } else { (&tx, &ty) };
    // ⟨c_l B_l | c_r B_r⟩ = 1 = c_l⁻¹ c_r ⟨B_l | B_r⟩
    let bare = left.coeff.mul(&right.coeff.inv());
    if !bare.is_gamma() {
        return Err(TorusError::NotGammaCoefficient(bare.to_string()));
    }
    // ⟨q^{c_l} B_l | q^{c_r} B_r⟩ = q^{c_r − c_l} ⟨B_l | B_r⟩
    let (outer_left, outer_right) = if v_first { (s, r) } else { (r, s) };
    Ok(outer_right - outer_left + bare.qexp())
}

/// Closed-form pairing against [`axiom_reduction_exponent`] on all of
/// `(s, m, r, k) ∈ [−range, range]⁴`, in both orders.
pub fn check_pairing_formula(torus: &Torus, rep: &RepPair, range: i64) -> Report {
    let mut report = Report::new();
    let span = || -range..=range;
    for s in span() {
        for m in span() {
            for r in span() {
                for k in span() {
                    let vq = gamma_term(torus, s, Basis::v(rep.clone(), m));
                    let uq = gamma_term(torus, r, Basis::u(rep.clone(), k));
                    for (v_first, left, right) in [(true, &vq, &uq), (false, &uq, &vq)] {
                        let case = format!("pairing {} s={} m={} r={} k={}", if v_first { "VU" } else { "UV" }, s, m, r, k);
                        let lhs = pairing(left, right).map(|p| p.exponent.to_string());
                        let rhs = axiom_reduction_exponent(torus, rep, v_first, s, m, r, k).map(|e| e.to_string());
                        report.compare(case, render(lhs), render(rhs));
                    }
                }
            }
        }
    }
    report
}

fn render<T: std::fmt::Display>(r: Result<T, TorusError>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error({})", e),
    }
}

/// The five pairing axioms, plus the inverse relation between the two orders.
///
/// Full symmetry as literally stated (`⟨x|y⟩ = ⟨y|x⟩`) contradicts the
/// inverse relation whenever the value is not 1; the number of such cases
/// is reported as a `NOTE`.
pub fn check_pairing_axioms(torus: &Torus, reps: &[RepPair], range: i64) -> Report {
    let mut report = Report::new();
    let span = || -range..=range;
    let rep = &reps[0];

    for rep in reps {
        let u0 = TorusElement::basis_u(torus, rep, 0);
        let v0 = TorusElement::basis_v(torus, rep, 0);
        report.compare(format!("axiom1 <u|v> {}", rep), render(pairing(&u0, &v0)), "q^0");
        report.compare(format!("axiom1 <v|u> {}", rep), render(pairing(&v0, &u0)), "q^0");
        for other in reps.iter().filter(|o| *o != rep) {
            let foreign = TorusElement::basis_u(torus, other, 0);
            let undefined = matches!(pairing(&v0, &foreign), Err(TorusError::UndefinedPairing { .. }));
            report.compare(format!("axiom5 {} vs {}", rep, other), undefined, true);
        }
    }

    for r in span() {
        for s in span() {
            let x = TorusElement::basis_u(torus, rep, 0)
                .apply_power(Operator::V, s)
                .apply_power(Operator::U, r);
            let y = TorusElement::basis_v(torus, rep, 0)
                .apply_power(Operator::V, s)
                .apply_power(Operator::U, r);
            report.compare(format!("axiom2 <U^rV^s u|U^rV^s v> r={} s={}", r, s), render(pairing_extended(&x, &y)), "q^0");
            report.compare(format!("axiom2 <U^rV^s v|U^rV^s u> r={} s={}", r, s), render(pairing_extended(&y, &x)), "q^0");
        }
    }

    let mut asymmetric = 0usize;
    let mut total = 0usize;
    for g1 in span() {
        for g2 in span() {
            for g3 in span() {
                for g4 in span() {
                    let x = gamma_term(torus, g1, Basis::u(rep.clone(), g2));
                    let y = gamma_term(torus, g3, Basis::v(rep.clone(), g4));
                    let bare = pairing(
                        &TorusElement::basis_u(torus, rep, g2),
                        &TorusElement::basis_v(torus, rep, g4),
                    );
                    let (xy, yx) = (pairing(&x, &y), pairing(&y, &x));
                    let label = format!("g1={} g2={} g3={} g4={}", g1, g2, g3, g4);
                    report.compare(
                        format!("axiom4 {}", label),
                        render(xy.clone()),
                        render(bare.map(|b| super::PairingValue { exponent: g3 - g1 + b.exponent })),
                    );
                    report.compare(
                        format!("inverse-order {}", label),
                        render(xy.clone()),
                        render(yx.clone().map(|p| p.inverse())),
                    );
                    total += 1;
                    if xy != yx {
                        asymmetric += 1;
                    }
                }
            }
        }
    }
    report.note(
        "axiom3 literal symmetry",
        format!(
            "<x|y> = <y|x> fails in {} of {} cases; the swapped order is the inverse value",
            asymmetric, total
        ),
    );
    report
}

/// Every sweep, sorted by case label.
pub fn run_all(range: i64) -> Report {
    let torus = Torus::new("q");
    let reps = default_reps();
    let mut report = check_relations(&torus, &reps, range);
    report.extend(check_pairing_formula(&torus, &reps[1], range));
    report.extend(check_pairing_axioms(&torus, &reps, range));
    report.sorted()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_hand_values() {
        let t = Torus::new("q");
        let rep = RepPair::new("a", "b").unwrap();
        assert_eq!(axiom_reduction_exponent(&t, &rep, true, 0, 0, 0, 0).unwrap(), 0);
        assert_eq!(axiom_reduction_exponent(&t, &rep, true, 1, 2, 3, 4).unwrap(), -6);
        assert_eq!(axiom_reduction_exponent(&t, &rep, false, 1, 2, 3, 4).unwrap(), 6);
    }

    #[test]
    fn small_sweep_is_clean() {
        let report = run_all(2);
        assert!(report.is_success(), "{}", report.failures().map(|c| c.to_string()).collect::<Vec<_>>().join("\n"));
        assert!(report.checked() > 0);
    }
}
