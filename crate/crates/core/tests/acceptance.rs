//! Acceptance sweep: one PASS/FAIL line per criterion, each under a time limit.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qtorus::coset_model::cosets_correspond;
use qtorus::definability::{bullets, check_bullets, check_rewrite, eval_atomic, power_relation, sample_family};
use qtorus::morita::{brute_force_search, decide_morita, solve_scaling, theta2_from_inverse, MoritaWitness};
use qtorus::quad_field::{cf_expand, convergent_matrix, mobius_apply, quad_normalize, Mat2Z, QuadIrr};
use qtorus::torus_core::verify::{check_pairing_formula, check_relations, default_reps};
use qtorus::torus_core::Torus;
use qtorus::transform::{build_transform, default_universe};

const FIELDS: [i64; 5] = [2, 3, 5, 7, 13];
const ORACLE_BOUND: u64 = 50;
const SAMPLES: usize = 6;

struct Pair {
    theta1: QuadIrr,
    theta2: QuadIrr,
    d: i64,
}

struct Corpus {
    equivalent: Vec<Pair>,
    inequivalent: Vec<Pair>,
}

fn random_theta(rng: &mut StdRng, d: i64) -> QuadIrr {
    let q = loop {
        let q = rng.gen_range(-6..=6);
        if q != 0 {
            break q;
        }
    };
    quad_normalize(rng.gen_range(-12..=12), q, rng.gen_range(1..=9), d).unwrap()
}

fn random_gl2(rng: &mut StdRng) -> Mat2Z {
    loop {
        let mut e = || rng.gen_range(-10i64..=10);
        if let Ok(m) = Mat2Z::new(e(), e(), e(), e()) {
            return m;
        }
    }
}

/// Five inequivalent pairs in `ℚ(√d)`: small quadratic irrationals grouped
/// by canonical period, paired across groups.
fn distinct_tails(d: i64) -> Vec<Pair> {
    let mut classes: BTreeMap<Vec<BigInt>, QuadIrr> = BTreeMap::new();
    for r in 1..=12 {
        for p in -6..=6 {
            for q in [1, 2, 3] {
                let x = quad_normalize(p, q, r, d).unwrap();
                classes.entry(cf_expand(&x).period().to_vec()).or_insert(x);
            }
        }
    }
    let reps: Vec<QuadIrr> = classes.into_values().collect();
    assert!(reps.len() >= 6, "too few period classes for d = {}", d);
    (0..5)
        .map(|i| Pair {
            theta1: reps[i].clone(),
            theta2: reps[i + 1].clone(),
            d,
        })
        .collect()
}

fn corpus() -> Corpus {
    let mut rng = StdRng::seed_from_u64(0x7031_7a65);
    let mut equivalent = Vec::new();
    for d in FIELDS {
        for _ in 0..5 {
            let theta1 = random_theta(&mut rng, d);
            let theta2 = mobius_apply(&random_gl2(&mut rng), &theta1);
            equivalent.push(Pair { theta1, theta2, d });
        }
    }
    let inequivalent = FIELDS.iter().flat_map(|&d| distinct_tails(d)).collect();
    Corpus {
        equivalent,
        inequivalent,
    }
}

fn witness(p: &Pair) -> Result<MoritaWitness, String> {
    decide_morita(&p.theta1, &p.theta2)
        .map_err(|e| e.to_string())?
        .witness()
        .cloned()
        .ok_or_else(|| format!("{} ~ {} not decided equivalent", p.theta1, p.theta2))
}

fn first_failure(report: &qtorus::Report) -> Option<String> {
    report.failures().next().map(|c| c.to_string())
}

fn operator_algebra(_: &Corpus) -> Result<String, String> {
    let report = check_relations(&Torus::new("q"), &default_reps(), 8);
    match first_failure(&report) {
        Some(f) => Err(f),
        None => Ok(format!("{} identities", report.checked())),
    }
}

fn pairing_correctness(_: &Corpus) -> Result<String, String> {
    let report = check_pairing_formula(&Torus::new("q"), &default_reps()[1], 5);
    // both argument orders per (s, m, r, k)
    if report.checked() != 2 * 11usize.pow(4) {
        return Err(format!("expected {} cases, ran {}", 2 * 11usize.pow(4), report.checked()));
    }
    match first_failure(&report) {
        Some(f) => Err(f),
        None => Ok(format!("{} cases", report.checked())),
    }
}

fn morita_vs_oracle(c: &Corpus) -> Result<String, String> {
    for p in &c.equivalent {
        let w = witness(p)?;
        w.verify(&p.theta1, &p.theta2).map_err(|e| e.to_string())?;
        let found = brute_force_search(&p.theta1, &p.theta2, ORACLE_BOUND)
            .ok_or_else(|| format!("oracle misses {} ~ {}", p.theta1, p.theta2))?;
        if mobius_apply(&found, &p.theta1) != p.theta2 || !found.det().abs().is_one() {
            return Err(format!("oracle returned a bad matrix {}", found));
        }
    }
    for p in &c.inequivalent {
        if decide_morita(&p.theta1, &p.theta2).map_err(|e| e.to_string())?.is_equivalent() {
            return Err(format!("{} ~ {} decided equivalent", p.theta1, p.theta2));
        }
        if let Some(m) = brute_force_search(&p.theta1, &p.theta2, ORACLE_BOUND) {
            return Err(format!("oracle found {} for {} ~ {}", m, p.theta1, p.theta2));
        }
    }
    Ok(format!("{} equivalent, {} inequivalent", c.equivalent.len(), c.inequivalent.len()))
}

fn scaling_round_trip(c: &Corpus) -> Result<String, String> {
    for p in &c.equivalent {
        let n = witness(p)?.matrix.inverse();
        let theta = solve_scaling(&n, &p.theta1, &p.theta2).map_err(|e| e.to_string())?;
        if !cosets_correspond(&p.theta1, &p.theta2, &theta).map_err(|e| e.to_string())? {
            return Err(format!("scaling {} fails for {} ~ {}", theta, p.theta1, p.theta2));
        }
        if theta2_from_inverse(&n, &p.theta1) != p.theta2 {
            return Err(format!("rearrangement misses {}", p.theta2));
        }
    }
    Ok(format!("{} pairs", c.equivalent.len()))
}

fn transform_diagrams(c: &Corpus) -> Result<String, String> {
    let mut slowest = Duration::ZERO;
    for p in &c.equivalent {
        let start = Instant::now();
        let w = witness(p)?;
        let t = build_transform(&p.theta1, &p.theta2, &w, &default_universe(p.d as u64)).map_err(|e| e.to_string())?;
        let report = t.verify_all(8, 4);
        if let Some(f) = first_failure(&report) {
            return Err(f);
        }
        slowest = slowest.max(start.elapsed());
    }
    if slowest > Duration::from_secs(10) {
        return Err(format!("slowest pair took {:.2?}", slowest));
    }
    Ok(format!("{} pairs, slowest {:.2?}", c.equivalent.len(), slowest))
}

fn definability(_: &Corpus) -> Result<String, String> {
    let mut matrices = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    if let Ok(m) = Mat2Z::new(a, b, c, d) {
                        matrices.push(m);
                    }
                }
            }
        }
    }
    // ad and bc each take 0 five ways and ±1 two ways each; |ad − bc| = 1
    // needs one of them zero and the other ±1
    let expected = 4 * 2 * 5;
    if matrices.len() != expected {
        return Err(format!("expected {} matrices, got {}", expected, matrices.len()));
    }
    let thetas: Vec<QuadIrr> = ["sqrt(2)", "(1+sqrt(5))/2", "(2+sqrt(13))/3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut checked = 0;
    for theta in &thetas {
        for m in &matrices {
            let report = check_rewrite(m, theta, SAMPLES);
            if let Some(f) = first_failure(&report) {
                return Err(f);
            }
            checked += report.checked();
        }
        for m in [-1, 1] {
            for n in -2..=2 {
                let report = check_bullets(theta, m, n, SAMPLES);
                if let Some(f) = first_failure(&report) {
                    return Err(f);
                }
                checked += report.checked();
            }
        }
        // for |m| ≥ 2 only the power relation implies the atom
        for m in [-3, -2, 2, 3] {
            for (name, f, big) in bullets(theta, m, 1) {
                for (case, x, y) in sample_family(theta, &[big.clone()], SAMPLES) {
                    let holds = power_relation(&x, &y, &big).map_err(|e| e.to_string())?;
                    if holds && !eval_atomic(&f, &x, &y, theta).map_err(|e| e.to_string())? {
                        return Err(format!("bullet {} misses {}", name, case));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{} evaluations", checked))
}

fn cf_engine(_: &Corpus) -> Result<String, String> {
    let mut values = Vec::new();
    'fill: for r in 1i64.. {
        for p in -5..=5 {
            for (i, &d) in FIELDS.iter().enumerate() {
                let q = [1, -1, 2, -3, 5][(p + r + i as i64).rem_euclid(5) as usize];
                values.push(quad_normalize(p * 3 + r, q, r, d).unwrap());
                if values.len() == 200 {
                    break 'fill;
                }
            }
        }
    }
    for x in &values {
        let cf = cf_expand(x);
        let back = cf.value().map_err(|e| e.to_string())?;
        if &back != x {
            return Err(format!("{} came back as {}", x, back));
        }
        for k in 0..cf.preperiod().len() + 2 * cf.period().len() {
            let want = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
            if convergent_matrix(&cf, k).det() != want {
                return Err(format!("determinant sign breaks at {} for {}", k, x));
            }
        }
    }
    Ok(format!("{} values", values.len()))
}

type Criterion = fn(&Corpus) -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, u64); 7] = [
        ("operator algebra", operator_algebra, 1),
        ("pairing vs axiom oracle", pairing_correctness, 5),
        ("morita decision vs brute force", morita_vs_oracle, 30),
        ("scaling round trip", scaling_round_trip, 30),
        ("geometric transformation", transform_diagrams, 250),
        ("definability", definability, 5),
        ("continued fraction engine", cf_engine, 2),
    ];
    let corpus = corpus();
    let mut ok = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(&corpus);
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= Duration::from_secs(*limit) => Ok(detail),
            Ok(detail) => Err(format!("{} but took {:.2?}, limit {}s", detail, elapsed, limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS {} {}: {} in {:.2?}", i + 1, name, detail, elapsed),
            Err(e) => {
                ok = false;
                println!("FAIL {} {}: {}", i + 1, name, e);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
