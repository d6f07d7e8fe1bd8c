use std::fmt;

use serde::Serialize;

/// Outcome of one verification check over a range of cases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, failures: Vec::new() }
    }

    /// Records one case.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.checked += 1;
        self.failures.push(message.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.checked)?;
        if !self.passed() {
            write!(f, ", {} failures; first: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}
