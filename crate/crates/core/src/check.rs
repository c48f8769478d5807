//! Outcome of an identity check.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// Largest deviation seen by a check: none at all for exact comparisons that
/// held, otherwise a magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ErrorMeasure {
    #[serde(serialize_with = "serialize_exact")]
    Exact,
    Value(f64),
}

fn serialize_exact<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("exact")
}

impl ErrorMeasure {
    pub fn combine(self, other: ErrorMeasure) -> ErrorMeasure {
        match (self, other) {
            (ErrorMeasure::Exact, e) | (e, ErrorMeasure::Exact) => e,
            (ErrorMeasure::Value(a), ErrorMeasure::Value(b)) => ErrorMeasure::Value(a.max(b)),
        }
    }
}

impl fmt::Display for ErrorMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorMeasure::Exact => f.write_str("exact"),
            ErrorMeasure::Value(v) => write!(f, "{v:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub passed: bool,
    pub error: ErrorMeasure,
    /// First failing identity.
    pub detail: Option<String>,
    /// Number of scalar or polynomial comparisons performed.
    pub comparisons: usize,
}

impl CheckReport {
    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.passed &= other.passed;
        self.error = self.error.combine(other.error);
        self.detail = self.detail.or(other.detail);
        self.comparisons += other.comparisons;
        self
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self { passed: true, error: ErrorMeasure::Exact, detail: None, comparisons: 0 }
    }
}

/// Accumulates comparisons into a [`CheckReport`].
#[derive(Debug, Default)]
pub struct Checker {
    report: CheckReport,
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    fn fail(&mut self, detail: impl FnOnce() -> String) {
        self.report.passed = false;
        if self.report.detail.is_none() {
            self.report.detail = Some(detail());
        }
    }

    /// Exact equality. A mismatch records its magnitude.
    pub fn exact<T: PartialEq + fmt::Debug>(&mut self, what: impl FnOnce() -> String, lhs: &T, rhs: &T, distance: impl FnOnce() -> f64) -> bool {
        self.report.comparisons += 1;
        if lhs == rhs {
            return true;
        }
        let d = distance();
        self.report.error = self.report.error.combine(ErrorMeasure::Value(d));
        self.fail(|| format!("{}: {:?} != {:?}", what(), lhs, rhs));
        false
    }

    pub fn exact_scalar<S: Scalar>(&mut self, what: impl FnOnce() -> String, lhs: &S, rhs: &S) -> bool {
        self.exact(what, lhs, rhs, || lhs.distance(rhs))
    }

    /// Float comparison within `tolerance`.
    pub fn within(&mut self, what: impl FnOnce() -> String, error: f64, tolerance: f64) -> bool {
        self.report.comparisons += 1;
        self.report.error = self.report.error.combine(ErrorMeasure::Value(error));
        if error <= tolerance {
            return true;
        }
        self.fail(|| format!("{}: error {error:e} exceeds {tolerance:e}", what()));
        false
    }

    pub fn record_failure(&mut self, detail: String) {
        self.report.comparisons += 1;
        self.fail(|| detail);
    }

    pub fn absorb(&mut self, other: CheckReport) {
        let mine = std::mem::take(&mut self.report);
        self.report = mine.merge(other);
    }

    pub fn finish(self) -> CheckReport {
        self.report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_pass_and_fail() {
        let mut c = Checker::new();
        assert!(c.exact(|| "a".into(), &1, &1, || 0.0));
        let r = c.finish();
        assert!(r.passed && r.error == ErrorMeasure::Exact);

        let mut c = Checker::new();
        c.exact(|| "first".into(), &1, &2, || 1.0);
        c.exact(|| "second".into(), &1, &3, || 2.0);
        let r = c.finish();
        assert!(!r.passed);
        assert_eq!(r.error, ErrorMeasure::Value(2.0));
        assert!(r.detail.unwrap().starts_with("first"));
    }

    #[test]
    fn tolerance_checks() {
        let mut c = Checker::new();
        c.within(|| "x".into(), 1e-12, 1e-10);
        let r = c.finish();
        assert!(r.passed);
        assert_eq!(r.error, ErrorMeasure::Value(1e-12));
    }
}
