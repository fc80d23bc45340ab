//! Machine-readable validation reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Valid,
    Invalid,
    Malformed,
}

/// One failed check: which identity, at which generator, and the rendered
/// residual (LHS minus RHS).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub generator: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default)]
    pub checks: usize,
    #[serde(default)]
    pub failures: Vec<CheckEntry>,
}

impl ValidationReport {
    /// A report over `checks` evaluated identities of which `failures` had a
    /// nonzero residual.
    pub fn from_checks(checks: usize, failures: Vec<CheckEntry>) -> Self {
        let status = if failures.is_empty() {
            Status::Valid
        } else {
            Status::Invalid
        };
        ValidationReport {
            status,
            message: None,
            checks,
            failures,
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        ValidationReport {
            status: Status::Malformed,
            message: Some(message.into()),
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    /// Concatenates two reports; invalid wins over valid.
    pub fn merge(mut self, other: ValidationReport) -> Self {
        if self.status == Status::Malformed {
            return self;
        }
        if other.status == Status::Malformed {
            return other;
        }
        self.checks += other.checks;
        self.failures.extend(other.failures);
        ValidationReport::from_checks(self.checks, self.failures)
    }
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the
/// struct, so equal reports print identically.
pub fn emit_report(report: &ValidationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
