//! Line-oriented verification reports.
//!
//! Text form is one line per case (`OK <case>`, `FAIL <case>: lhs=… rhs=…`,
//! `NOTE <case>: …`); the JSON summary is `{"checked": n, "failed": m}`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Fail { lhs: String, rhs: String },
    /// Informational finding; not counted as checked or failed.
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub case: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    cases: Vec<CaseResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: usize,
    pub failed: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `OK` when the two renderings agree, `FAIL` otherwise.
    pub fn compare(&mut self, case: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let outcome = if lhs == rhs {
            Outcome::Ok
        } else {
            Outcome::Fail { lhs, rhs }
        };
        self.cases.push(CaseResult {
            case: case.into(),
            outcome,
        });
    }

    pub fn ok(&mut self, case: impl Into<String>) {
        self.cases.push(CaseResult {
            case: case.into(),
            outcome: Outcome::Ok,
        });
    }

    pub fn fail(&mut self, case: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.cases.push(CaseResult {
            case: case.into(),
            outcome: Outcome::Fail {
                lhs: lhs.into(),
                rhs: rhs.into(),
            },
        });
    }

    pub fn note(&mut self, case: impl Into<String>, message: impl Into<String>) {
        self.cases.push(CaseResult {
            case: case.into(),
            outcome: Outcome::Note(message.into()),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }

    pub fn cases(&self) -> &[CaseResult] {
        &self.cases
    }

    pub fn checked(&self) -> usize {
        self.cases.iter().filter(|c| !matches!(c.outcome, Outcome::Note(_))).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| matches!(c.outcome, Outcome::Fail { .. })).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn is_success(&self) -> bool {
        self.failed() == 0
    }

    pub fn summary(&self) -> Summary {
        Summary {
            checked: self.checked(),
            failed: self.failed(),
        }
    }

    /// Sorts cases by label so output is independent of sweep order.
    pub fn sorted(mut self) -> Self {
        self.cases.sort_by(|a, b| a.case.cmp(&b.case));
        self
    }
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Ok => write!(f, "OK {}", self.case),
            Outcome::Fail { lhs, rhs } => write!(f, "FAIL {}: lhs={} rhs={}", self.case, lhs, rhs),
            Outcome::Note(msg) => write!(f, "NOTE {}: {}", self.case, msg),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for case in &self.cases {
            writeln!(f, "{}", case)?;
        }
        Ok(())
    }
}
