//! Uniform violation reports for the validators.

use std::fmt;

/// One failed check, with enough location data to reproduce it: a rule name,
/// where it failed (degree, axis, lattice point, entry), and detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub at: String,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: &'static str, at: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { rule, at: at.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.rule, self.at, self.detail)
    }
}

impl std::error::Error for Violation {}
