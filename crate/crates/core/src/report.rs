//! Pass/fail records shared by every verification routine.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    /// The identity or property being checked, written as a formula.
    pub anchor: String,
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(anchor: impl Into<String>, label: String) -> Self {
        Check { anchor: anchor.into(), label, passed: true, detail: None }
    }

    pub fn fail(anchor: impl Into<String>, label: String, detail: String) -> Self {
        Check { anchor: anchor.into(), label, passed: false, detail: Some(detail) }
    }

    pub fn from_bool(anchor: impl Into<String>, label: String, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(anchor, label)
        } else {
            Self::fail(anchor, label, detail())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>, checks: Vec<Check>) -> Self {
        Report { title: title.into(), checks }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}/{} passed", self.title, self.passed_count(), self.checks.len())?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  [{mark}] {} ({})", c.label, c.anchor)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
