//! Validation and functor reports with text and JSON rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Stored witnesses per axiom before further ones are only counted.
pub const WITNESS_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The hypothesis of an implication did not hold, so nothing was tested.
    PassVacuous,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    /// Violations that were counted but not stored because of [`WITNESS_CAP`].
    #[serde(default)]
    pub omitted: usize,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            verdict: Verdict::Pass,
            violations: Vec::new(),
            omitted: 0,
            notes: Vec::new(),
        }
    }

    pub fn vacuous(subject: impl Into<String>, why: impl Into<String>) -> Self {
        let mut r = Self::new(subject);
        r.verdict = Verdict::PassVacuous;
        r.notes.push(why.into());
        r
    }

    pub fn push(
        &mut self,
        axiom: &str,
        witness: Vec<String>,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) {
        self.verdict = Verdict::Fail;
        let stored = self.violations.iter().filter(|v| v.axiom == axiom).count();
        if stored >= WITNESS_CAP {
            self.omitted += 1;
            return;
        }
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
            expected: expected.into(),
            found: found.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.push(&v.axiom, v.witness, v.expected, v.found);
        }
        self.omitted += other.omitted;
        self.notes.extend(other.notes);
        if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn violation_count(&self) -> usize {
        self.violations.len() + self.omitted
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn summary(&self) -> String {
        let head = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::PassVacuous => "PASS (vacuous)",
            Verdict::Fail => "FAIL",
        };
        match self.verdict {
            Verdict::PassVacuous => head.to_string(),
            _ => format!("{head} ({} violations)", self.violation_count()),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "{}: {}", self.subject, self.summary());
                for v in &self.violations {
                    let _ = writeln!(
                        out,
                        "  [{}] witness ({}): expected {}, found {}",
                        v.axiom,
                        v.witness.join(", "),
                        v.expected,
                        v.found
                    );
                }
                if self.omitted > 0 {
                    let _ = writeln!(out, "  ... {} more not shown", self.omitted);
                }
                for n in &self.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

/// Outcome of one instance-level check of a construction or theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub construction: String,
    pub instances: Vec<String>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl FunctorReport {
    pub fn new(construction: impl Into<String>, instances: Vec<String>) -> Self {
        FunctorReport {
            construction: construction.into(),
            instances,
            verdict: Verdict::Pass,
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, claim: impl Into<String>, ok: bool, witness: Option<String>) {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(Check {
            claim: claim.into(),
            verdict,
            witness,
        });
    }

    /// Folds a validation report in as a single claim.
    pub fn check_report(&mut self, claim: impl Into<String>, report: &ValidationReport) {
        let witness = report.violations.first().map(|v| {
            format!(
                "[{}] ({}) expected {}, found {}",
                v.axiom,
                v.witness.join(", "),
                v.expected,
                v.found
            )
        });
        self.check(claim, report.passed(), witness);
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut out = String::new();
                let failed = self.checks.iter().filter(|c| !c.verdict.is_pass()).count();
                let _ = writeln!(
                    out,
                    "{} [{}]: {} ({} of {} checks failed)",
                    self.construction,
                    self.instances.join(", "),
                    if self.passed() { "PASS" } else { "FAIL" },
                    failed,
                    self.checks.len()
                );
                for c in &self.checks {
                    let mark = if c.verdict.is_pass() { "ok  " } else { "FAIL" };
                    match &c.witness {
                        Some(w) => {
                            let _ = writeln!(out, "  {mark} {}: {w}", c.claim);
                        }
                        None => {
                            let _ = writeln!(out, "  {mark} {}", c.claim);
                        }
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}
