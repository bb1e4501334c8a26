//! Rewriting `y = x^Θ`, `Θ = (m₁₁θ + m₁₂)/(m₂₁θ + m₂₂)`, as one `C_θ` atom.
//!
//! `y^{m₂₁θ+m₂₂} = x^{m₁₁θ+m₁₂}` regroups to `(y^{m₂₁}x^{−m₁₁})^θ = x^{m₁₂}y^{−m₂₂}`,
//! which is the atom `C_θ(y^{m₂₁}x^{−m₁₁}, x^{m₁₂}y^{−m₂₂})`.
//!
//! In the exponent model the atom `C_θ(a, b)` says `β_b − θ·α_a ∈ ℤθ + ℤ`.
//! Substituting, the atom holds iff `(β, α)` satisfies
//! `(m₂₁θ + m₂₂)β − (m₁₁θ + m₁₂)α ∈ ℤθ + ℤ`, while `y = x^Θ` asks for the
//! same difference to lie in the subgroup generated by `m₁₁θ + m₁₂` and
//! `m₂₁θ + m₂₂`. The two subgroups agree exactly when `|det M| = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::coset_model::{ctheta_related, CosetError, ExpPoint};
use crate::quad_field::{mobius_apply, Mat2Z, QuadError, QuadIrr, QuadValue, Rational};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefinabilityError {
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("cannot parse formula: {0}")]
    Parse(String),
}

/// `C_θ(y^{lhs_y_exp}·x^{lhs_x_exp}, x^{rhs_x_exp}·y^{rhs_y_exp})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicFormula {
    pub lhs_x_exp: BigInt,
    pub lhs_y_exp: BigInt,
    pub rhs_x_exp: BigInt,
    pub rhs_y_exp: BigInt,
}

impl AtomicFormula {
    pub fn new(
        lhs_x_exp: impl Into<BigInt>,
        lhs_y_exp: impl Into<BigInt>,
        rhs_x_exp: impl Into<BigInt>,
        rhs_y_exp: impl Into<BigInt>,
    ) -> Self {
        AtomicFormula {
            lhs_x_exp: lhs_x_exp.into(),
            lhs_y_exp: lhs_y_exp.into(),
            rhs_x_exp: rhs_x_exp.into(),
            rhs_y_exp: rhs_y_exp.into(),
        }
    }

    /// `C_θ(x, y)` itself.
    pub fn relation() -> Self {
        AtomicFormula::new(1, 0, 0, 1)
    }

    /// `C_θ(a⁻¹, b⁻¹)` is `C_θ(a, b)`. The representative keeps the first
    /// nonzero of `(−lhs_x, lhs_y, rhs_x, rhs_y)` positive, so the first
    /// argument's `x`-exponent is nonpositive whenever it is nonzero.
    pub fn normalized(&self) -> AtomicFormula {
        let lead = [-&self.lhs_x_exp, self.lhs_y_exp.clone(), self.rhs_x_exp.clone(), self.rhs_y_exp.clone()]
            .into_iter()
            .find(|e| !e.is_zero());
        match lead {
            Some(e) if e.is_negative() => self.inverted(),
            _ => self.clone(),
        }
    }

    fn inverted(&self) -> AtomicFormula {
        AtomicFormula {
            lhs_x_exp: -&self.lhs_x_exp,
            lhs_y_exp: -&self.lhs_y_exp,
            rhs_x_exp: -&self.rhs_x_exp,
            rhs_y_exp: -&self.rhs_y_exp,
        }
    }

    /// `[[m₁₁, m₁₂], [m₂₁, m₂₂]]` read back from the atom, when unimodular.
    pub fn matrix(&self) -> Option<Mat2Z> {
        Mat2Z::new(
            -&self.lhs_x_exp,
            self.rhs_x_exp.clone(),
            self.lhs_y_exp.clone(),
            -&self.rhs_y_exp,
        )
        .ok()
    }

    /// The exponent `Θ` this atom defines as `y = x^Θ`, if it is one.
    pub fn target_exponent(&self, theta: &QuadIrr) -> Option<QuadIrr> {
        self.matrix().map(|m| mobius_apply(&m, theta))
    }

    fn arguments(&self, x: &ExpPoint, y: &ExpPoint) -> Result<(ExpPoint, ExpPoint), DefinabilityError> {
        let a = y.pow(&self.lhs_y_exp).mul(&x.pow(&self.lhs_x_exp))?;
        let b = x.pow(&self.rhs_x_exp).mul(&y.pow(&self.rhs_y_exp))?;
        Ok((a, b))
    }
}

fn push_factor(parts: &mut Vec<String>, sym: &str, e: &BigInt) {
    if e.is_zero() {
    } else if e.is_one() {
        parts.push(sym.to_string());
    } else {
        parts.push(format!("{}^{}", sym, e));
    }
}

fn product(first: (&str, &BigInt), second: (&str, &BigInt)) -> String {
    let mut parts = Vec::new();
    push_factor(&mut parts, first.0, first.1);
    push_factor(&mut parts, second.0, second.1);
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

impl fmt::Display for AtomicFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C_theta({}, {})",
            product(("y", &self.lhs_y_exp), ("x", &self.lhs_x_exp)),
            product(("x", &self.rhs_x_exp), ("y", &self.rhs_y_exp))
        )
    }
}

/// `(x-exponent, y-exponent)` of a product like `y^2 * x^-1`, `x`, or `1`.
fn parse_product(src: &str) -> Result<(BigInt, BigInt), DefinabilityError> {
    let bad = || DefinabilityError::Parse(format!("bad argument {:?}", src));
    let (mut xe, mut ye) = (BigInt::zero(), BigInt::zero());
    let src = src.trim();
    if src == "1" {
        return Ok((xe, ye));
    }
    for factor in src.split('*') {
        let factor = factor.trim();
        let (sym, exp) = match factor.split_once('^') {
            Some((s, e)) => (s.trim(), e.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (factor, BigInt::one()),
        };
        match sym {
            "x" => xe += exp,
            "y" => ye += exp,
            _ => return Err(bad()),
        }
    }
    Ok((xe, ye))
}

impl FromStr for AtomicFormula {
    type Err = DefinabilityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix("C_theta(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| DefinabilityError::Parse(format!("expected C_theta(.., ..), got {:?}", s)))?;
        let (lhs, rhs) = inner
            .split_once(',')
            .ok_or_else(|| DefinabilityError::Parse(format!("expected two arguments in {:?}", s)))?;
        let (lx, ly) = parse_product(lhs)?;
        let (rx, ry) = parse_product(rhs)?;
        Ok(AtomicFormula::new(lx, ly, rx, ry))
    }
}

/// `C_θ(y^{m₂₁}x^{−m₁₁}, x^{m₁₂}y^{−m₂₂})`, normalized.
pub fn rewrite(m: &Mat2Z) -> AtomicFormula {
    AtomicFormula::new(-m.a(), m.c().clone(), m.b().clone(), -m.d()).normalized()
}

/// Truth of `f` at `(x, y)` in the structure with parameter `theta`.
pub fn eval_atomic(f: &AtomicFormula, x: &ExpPoint, y: &ExpPoint, theta: &QuadIrr) -> Result<bool, DefinabilityError> {
    let (a, b) = f.arguments(x, y)?;
    Ok(ctheta_related(&a, &b, &QuadValue::from(theta.clone()))?)
}

/// `y = x^Θ`, the reference relation.
pub fn power_relation(x: &ExpPoint, y: &ExpPoint, big_theta: &QuadValue) -> Result<bool, DefinabilityError> {
    Ok(ctheta_related(x, y, big_theta)?)
}

fn rat(n: i64, d: i64) -> QuadValue {
    QuadValue::from(Rational::new(n.into(), d.into()))
}

fn surd(theta: &QuadIrr, n: i64, d: i64) -> QuadValue {
    let root = QuadValue::from_parts(0, 1, 1, theta.discriminant().clone()).expect("D > 1 is irrational");
    root.checked_mul(&rat(n, d)).expect("same field")
}

/// The `i`-th grid exponent `p/7 + q·√D/11`.
fn grid_alpha(theta: &QuadIrr, i: usize) -> QuadValue {
    let p = (i % 7) as i64 - 3;
    let q = ((i / 7) % 5) as i64 - 2;
    rat(p, 7).checked_add(&surd(theta, q, 11)).expect("same field")
}

/// Deterministic points around `y = x^Θ` for each target `Θ`: for the
/// `i`-th grid exponent `α`, one satisfying `β = Θ(α + k) + n` and two
/// violating shifts of it by `1/2` and `√D/3`.
pub fn sample_family(theta: &QuadIrr, targets: &[QuadValue], samples: usize) -> Vec<(String, ExpPoint, ExpPoint)> {
    let mut out = Vec::new();
    for i in 0..samples {
        let alpha = grid_alpha(theta, i);
        let k = rat((i % 3) as i64 - 1, 1);
        let n = rat((i % 5) as i64 - 2, 1);
        for (t, big) in targets.iter().enumerate() {
            let sat = big
                .checked_mul(&alpha.checked_add(&k).expect("same field"))
                .and_then(|v| v.checked_add(&n))
                .expect("same field");
            let shifts = [("sat", QuadValue::zero()), ("half", rat(1, 2)), ("surd", surd(theta, 1, 3))];
            for (kind, shift) in shifts {
                let beta = sat.checked_add(&shift).expect("same field");
                out.push((
                    format!("sample {} target {} {}", i, t, kind),
                    ExpPoint::new(alpha.clone()),
                    ExpPoint::new(beta),
                ));
            }
        }
    }
    out
}

/// Like [`sample_family`] with exponents drawn from a seeded generator.
pub fn random_family(
    theta: &QuadIrr,
    targets: &[QuadValue],
    samples: usize,
    seed: u64,
) -> Vec<(String, ExpPoint, ExpPoint)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..samples {
        let alpha = rat(rng.gen_range(-20..=20), rng.gen_range(1..=12))
            .checked_add(&surd(theta, rng.gen_range(-20..=20), rng.gen_range(1..=12)))
            .expect("same field");
        for (t, big) in targets.iter().enumerate() {
            let (k, n) = (rat(rng.gen_range(-5..=5), 1), rat(rng.gen_range(-5..=5), 1));
            let sat = big
                .checked_mul(&alpha.checked_add(&k).expect("same field"))
                .and_then(|v| v.checked_add(&n))
                .expect("same field");
            let noise = if rng.gen_bool(0.5) {
                QuadValue::zero()
            } else {
                rat(rng.gen_range(-6..=6), rng.gen_range(1..=9))
                    .checked_add(&surd(theta, rng.gen_range(-6..=6), rng.gen_range(1..=9)))
                    .expect("same field")
            };
            let beta = sat.checked_add(&noise).expect("same field");
            out.push((format!("random {} target {}", i, t), ExpPoint::new(alpha.clone()), ExpPoint::new(beta)));
        }
    }
    out
}

fn show(r: Result<bool, DefinabilityError>) -> String {
    match r {
        Ok(b) => b.to_string(),
        Err(e) => format!("error({})", e),
    }
}

/// Compares `f1` and `f2` on the sample family built around both targets.
pub fn semantic_equiv(f1: &AtomicFormula, f2: &AtomicFormula, theta: &QuadIrr, samples: usize) -> Report {
    let targets: Vec<QuadValue> = [f1, f2]
        .iter()
        .filter_map(|f| f.target_exponent(theta))
        .map(QuadValue::from)
        .collect();
    let mut report = Report::new();
    for (case, x, y) in sample_family(theta, &targets, samples) {
        report.compare(
            format!("{} vs {} {}", f1, f2, case),
            show(eval_atomic(f1, &x, &y, theta)),
            show(eval_atomic(f2, &x, &y, theta)),
        );
    }
    report
}

/// `rewrite(m)` against `y = x^{m·θ}` on `points`.
pub fn check_rewrite_on(m: &Mat2Z, theta: &QuadIrr, points: &[(String, ExpPoint, ExpPoint)]) -> Report {
    let f = rewrite(m);
    let big = QuadValue::from(mobius_apply(m, theta));
    let mut report = Report::new();
    for (case, x, y) in points {
        report.compare(
            format!("rewrite {} {}", m, case),
            show(eval_atomic(&f, x, y, theta)),
            show(power_relation(x, y, &big)),
        );
    }
    report
}

/// `rewrite(m)` against `y = x^{m·θ}` on the deterministic family.
pub fn check_rewrite(m: &Mat2Z, theta: &QuadIrr, samples: usize) -> Report {
    let big = QuadValue::from(mobius_apply(m, theta));
    check_rewrite_on(m, theta, &sample_family(theta, &[big], samples))
}

/// The four single-step rewrites for integers `m`, `n`, each with the
/// exponent `Θ` it defines:
///
/// ```text
/// y = x^{mθ}         ≡ C_θ(x^m, y)
/// y = x^{mθ+n}       ≡ C_θ(x^m, y·x^{−n})
/// y = x^{1/θ}        ≡ C_θ(y, x)
/// y = x^{1/(mθ+n)}   ≡ C_θ(y^m, x·y^{−n})
/// ```
pub fn bullets(theta: &QuadIrr, m: i64, n: i64) -> Vec<(String, AtomicFormula, QuadValue)> {
    let t = QuadValue::from(theta.clone());
    let affine = t.scale(&m.into()).checked_add(&n.into()).expect("same field");
    let mut out = vec![
        (format!("x^({}θ)", m), AtomicFormula::new(m, 0, 0, 1), t.scale(&m.into())),
        (format!("x^({}θ+{})", m, n), AtomicFormula::new(m, 0, -n, 1), affine.clone()),
        ("x^(1/θ)".to_string(), AtomicFormula::new(0, 1, 1, 0), t.recip().expect("θ ≠ 0")),
    ];
    if let Ok(inv) = affine.recip() {
        out.push((format!("x^(1/({}θ+{}))", m, n), AtomicFormula::new(0, m, 1, -n), inv));
    }
    out
}

/// Each bullet against its power relation on the deterministic family.
///
/// The bullets are equivalences only for `m = ±1`; for `|m| ≥ 2` the atom
/// also admits `β` off the relation by `θ`-multiples not divisible by `m`.
pub fn check_bullets(theta: &QuadIrr, m: i64, n: i64, samples: usize) -> Report {
    let mut report = Report::new();
    for (name, f, big) in bullets(theta, m, n) {
        for (case, x, y) in sample_family(theta, &[big.clone()], samples) {
            report.compare(
                format!("bullet y={} {} {}", name, f, case),
                show(eval_atomic(&f, &x, &y, theta)),
                show(power_relation(&x, &y, &big)),
            );
        }
    }
    report
}
