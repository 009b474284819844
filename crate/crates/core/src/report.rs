//! Structured pass/fail records shared by the exact checks.

use serde::Serialize;

use crate::format::{MatrixDto, TermDto};

/// Outcome of one exact check over an algebra or coefficient set.
///
/// `checked` counts the instances examined; `failures` lists every instance
/// with a nonzero residual, in a deterministic order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub subject: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    /// What was evaluated, e.g. a generator pair or a relation with its
    /// free-index values.
    pub location: Vec<String>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Residual {
    Terms(Vec<TermDto>),
    Matrix(MatrixDto),
    Scalar(String),
    Message(String),
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, subject: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            subject: subject.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} on {}: {} checked, {} failure(s)",
            self.check,
            self.subject,
            self.checked,
            self.failures.len()
        )
    }
}
