//! Command reports: named pass/fail checks around a JSON payload.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// Passes iff `actual == expected`; the detail shows both on failure.
    pub fn equal<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, actual: &T, expected: &T) -> Self {
        let pass = actual == expected;
        let detail = if pass { format!("{actual:?}") } else { format!("got {actual:?}, expected {expected:?}") };
        Check::new(name, pass, detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the parsed input documents.
    pub inputs: String,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
