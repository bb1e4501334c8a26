//! The `qtorus` command line.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict or a
//! failed check, 2 for bad input.

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::coset_model::ExpPoint;
use crate::definability::{eval_atomic, rewrite, AtomicFormula};
use crate::morita::{brute_force_search, decide_morita, MoritaDecision};
use crate::quad_field::{cf_expand, mobius_apply, Mat2Z, QuadIrr, QuadValue};
use crate::report::{Outcome, Report};
use crate::torus_core::verify;
use crate::transform::{build_transform, default_universe};

#[derive(Parser, Debug)]
#[command(name = "qtorus", version, about = "Exact computations on quantum 2-tori with quadratic parameters")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Continued fraction expansion of a quadratic irrational.
    Cf { theta: String },
    /// Decide whether T_theta1 and T_theta2 are Morita equivalent.
    Morita {
        theta1: String,
        theta2: String,
        /// Also run the brute-force search with entries bounded by N.
        #[arg(long, value_name = "N")]
        bound: Option<u64>,
    },
    /// Sweep the operator relations and pairing axioms.
    TorusVerify {
        #[arg(long, value_name = "N", default_value_t = 4)]
        exp_range: i64,
    },
    /// Build L_theta for an equivalent pair and check diagrams and pairings.
    TransformVerify {
        theta1: String,
        theta2: String,
        #[arg(long, value_name = "N", default_value_t = 4)]
        exp_range: i64,
    },
    /// The C_theta atom defining y = x^(M.theta) for M = [[a, b], [c, d]].
    Rewrite {
        #[arg(allow_hyphen_values = true)]
        a: BigInt,
        #[arg(allow_hyphen_values = true)]
        b: BigInt,
        #[arg(allow_hyphen_values = true)]
        c: BigInt,
        #[arg(allow_hyphen_values = true)]
        d: BigInt,
    },
    /// Evaluate a C_theta atom at exponents x, y.
    Eval {
        formula: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
    },
}

/// Result of one command: what to print and how to exit.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Style {
    on: bool,
}

impl Style {
    fn detect() -> Self {
        let disabled = std::env::var("QTORUS_COLOR").is_ok_and(|v| v == "0");
        Style {
            on: !disabled && std::io::stdout().is_terminal(),
        }
    }

    fn paint(&self, s: &str, code: &str) -> String {
        if self.on {
            format!("\x1b[{}m{}\x1b[0m", code, s)
        } else {
            s.to_string()
        }
    }

    fn report_line(&self, line: String) -> String {
        for (word, code) in [("OK", "32"), ("FAIL", "31"), ("NOTE", "33")] {
            if let Some(rest) = line.strip_prefix(word) {
                return format!("{}{}", self.paint(word, code), rest);
            }
        }
        line
    }
}

fn irrational(src: &str) -> Result<QuadIrr, InputError> {
    Ok(src.parse::<QuadValue>()?.into_irrational()?)
}

fn numbers(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|a| serde_json::from_str::<Value>(&a.to_string()).expect("integer literal is JSON"))
            .collect(),
    )
}

fn matrix_json(m: &Mat2Z) -> Value {
    let [a, b, c, d] = m.entries();
    json!([numbers(&[a.clone(), b.clone()]), numbers(&[c.clone(), d.clone()])])
}

fn report_output(report: &Report, style: &Style) -> Output {
    let mut lines: Vec<String> = report.cases().iter().map(|c| style.report_line(c.to_string())).collect();
    let s = report.summary();
    lines.push(format!("checked {} failed {}", s.checked, s.failed));
    let failures: Vec<String> = report
        .cases()
        .iter()
        .filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
        .map(|c| c.to_string())
        .collect();
    let notes: Vec<String> = report
        .cases()
        .iter()
        .filter(|c| matches!(c.outcome, Outcome::Note(_)))
        .map(|c| c.to_string())
        .collect();
    Output {
        text: lines.join("\n"),
        json: json!({ "checked": s.checked, "failed": s.failed, "failures": failures, "notes": notes }),
        code: if report.is_success() { 0 } else { 1 },
    }
}

fn cmd_cf(theta: &str) -> Result<Output, InputError> {
    let cf = cf_expand(&irrational(theta)?);
    let list = |v: &[BigInt]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
    Ok(Output {
        text: format!("preperiod: [{}]\nperiod: [{}]", list(cf.preperiod()), list(cf.period())),
        json: json!({ "preperiod": numbers(cf.preperiod()), "period": numbers(cf.period()) }),
        code: 0,
    })
}

fn cmd_morita(t1: &str, t2: &str, bound: Option<u64>) -> Result<Output, InputError> {
    let (theta1, theta2) = (irrational(t1)?, irrational(t2)?);
    let decision = decide_morita(&theta1, &theta2)?;
    let mut lines = Vec::new();
    match &decision {
        MoritaDecision::Equivalent(w) => {
            lines.push("equivalent".to_string());
            lines.push(format!("matrix: {}", w.matrix));
            lines.push(format!("scaling_theta: {}", w.scaling_theta));
            if let Some((i, j)) = w.tail_indices {
                lines.push(format!("tail_indices: {} {}", i, j));
            }
            lines.push(format!("check: {} . {} = {}", w.matrix, theta1, mobius_apply(&w.matrix, &theta1)));
            lines.push(format!("check: det = {}", w.matrix.det()));
            lines.push(format!("check: scaling_theta carries Z({}) + Z onto Z({}) + Z", theta1, theta2));
        }
        MoritaDecision::NotEquivalent(e) => {
            lines.push("not equivalent".to_string());
            lines.push(format!("evidence: {}", e));
        }
    }
    let mut json = match &decision {
        MoritaDecision::Equivalent(w) => json!({
            "equivalent": true,
            "matrix": matrix_json(&w.matrix),
            "scaling_theta": w.scaling_theta.to_string(),
            "tail_indices": w.tail_indices,
        }),
        MoritaDecision::NotEquivalent(e) => json!({ "equivalent": false, "evidence": e.to_string() }),
    };
    if let Some(b) = bound {
        let found = brute_force_search(&theta1, &theta2, b);
        match &found {
            Some(m) => lines.push(format!("oracle (bound {}): {}", b, m)),
            None => lines.push(format!("oracle (bound {}): no matrix", b)),
        }
        json["oracle"] = match found {
            Some(m) => json!({ "bound": b, "matrix": matrix_json(&m) }),
            None => json!({ "bound": b, "matrix": null }),
        };
    }
    Ok(Output {
        text: lines.join("\n"),
        json,
        code: if decision.is_equivalent() { 0 } else { 1 },
    })
}

fn exp_range(n: i64) -> Result<i64, InputError> {
    if n < 1 {
        Err(InputError(format!("--exp-range must be at least 1, got {}", n)))
    } else {
        Ok(n)
    }
}

fn cmd_transform_verify(t1: &str, t2: &str, range: i64, style: &Style) -> Result<Output, InputError> {
    let range = exp_range(range)?;
    let (theta1, theta2) = (irrational(t1)?, irrational(t2)?);
    let decision = decide_morita(&theta1, &theta2)?;
    let witness = match decision {
        MoritaDecision::Equivalent(w) => w,
        MoritaDecision::NotEquivalent(e) => {
            return Ok(Output {
                text: format!("not equivalent\nevidence: {}", e),
                json: json!({ "equivalent": false, "evidence": e.to_string() }),
                code: 1,
            })
        }
    };
    let d = theta1
        .discriminant()
        .to_u64()
        .ok_or_else(|| InputError("discriminant too large".into()))?;
    let t = build_transform(&theta1, &theta2, &witness, &default_universe(d))?;
    let mut out = report_output(&t.verify_all(range, range), style);
    out.json["equivalent"] = json!(true);
    Ok(out)
}

fn cmd_rewrite(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Output, InputError> {
    let m = Mat2Z::new(a, b, c, d)?;
    let f = rewrite(&m);
    Ok(Output {
        text: f.to_string(),
        json: json!({ "matrix": matrix_json(&m), "formula": f.to_string() }),
        code: 0,
    })
}

fn cmd_eval(formula: &str, x: &str, y: &str, theta: &str) -> Result<Output, InputError> {
    let f: AtomicFormula = formula.parse()?;
    let (x, y) = (ExpPoint::new(x.parse::<QuadValue>()?), ExpPoint::new(y.parse::<QuadValue>()?));
    let value = eval_atomic(&f, &x, &y, &irrational(theta)?)?;
    Ok(Output {
        text: value.to_string(),
        json: json!({ "formula": f.to_string(), "value": value }),
        code: if value { 0 } else { 1 },
    })
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Output, InputError> {
    let style = Style::detect();
    match &cli.command {
        Command::Cf { theta } => cmd_cf(theta),
        Command::Morita { theta1, theta2, bound } => cmd_morita(theta1, theta2, *bound),
        Command::TorusVerify { exp_range: n } => Ok(report_output(&verify::run_all(exp_range(*n)?), &style)),
        Command::TransformVerify {
            theta1,
            theta2,
            exp_range,
        } => cmd_transform_verify(theta1, theta2, *exp_range, &style),
        Command::Rewrite { a, b, c, d } => cmd_rewrite(a.clone(), b.clone(), c.clone(), d.clone()),
        Command::Eval { formula, x, y, theta } => cmd_eval(formula, x, y, theta),
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(InputError(msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
