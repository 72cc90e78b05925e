//! Verification reports and their JSON and text forms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::FunctionSpec;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedHypothesis,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedHypothesis => "skipped-hypothesis",
        }
    }
}

/// One check on one fixture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The result the check exercises, in words.
    pub anchor: String,
    pub fixture_id: String,
    pub status: Status,
    /// Largest relative error seen by an equality check; 0 for inequalities.
    pub max_error: f64,
    /// Smallest relative slack `(rhs − lhs)/rhs` seen by an inequality check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_slack: Option<f64>,
    /// Wall time; only recorded on request since it breaks reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// The function at which a failing check was worst.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<FunctionSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub fixtures: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, fixtures: Vec<String>) -> Self {
        Report {
            suite: suite.to_string(),
            seed,
            fixtures,
            checks: Vec::new(),
        }
    }

    /// Orders records by check id, then fixture id.
    pub fn normalize(&mut self) {
        self.checks.sort_by(|a, b| {
            (a.check_id.as_str(), a.fixture_id.as_str())
                .cmp(&(b.check_id.as_str(), b.fixture_id.as_str()))
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{:<18} {:<40} {:<6} max_error={:.3e}",
                c.status.label(),
                c.check_id,
                c.fixture_id,
                c.max_error
            );
            if let Some(s) = c.bound_slack {
                let _ = write!(out, " slack={s:.3e}");
            }
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " elapsed={ms:.1}ms");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, " ({d})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "suite {} seed {}: {} pass, {} fail, {} skipped",
            self.suite,
            self.seed,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedHypothesis)
        );
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ComplexSpec;

    fn record(id: &str, fixture: &str, status: Status) -> CheckRecord {
        CheckRecord {
            check_id: id.to_string(),
            anchor: "convolution is associative".to_string(),
            fixture_id: fixture.to_string(),
            status,
            max_error: 1.25e-14,
            bound_slack: Some(0.1 + 0.2),
            elapsed_ms: None,
            detail: None,
            reproducer: None,
        }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new("core", 1, vec![]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert_eq!(v["suite"], "core");
        assert!(r.passed());
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let mut r = Report::new("all", 42, vec!["F1".into(), "F2".into()]);
        r.checks.push(record("b", "F1", Status::Pass));
        let mut failing = record("a", "F2", Status::Fail);
        failing.reproducer = Some(FunctionSpec(vec![
            vec![ComplexSpec::Real(1.0), ComplexSpec::Pair([0.5, -1.0 / 3.0])],
            vec![ComplexSpec::Real(0.0), ComplexSpec::Real(2.0)],
        ]));
        r.checks.push(failing);
        r.normalize();
        assert_eq!(r.checks[0].check_id, "a");
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.passed());
    }

    #[test]
    fn text_has_one_line_per_check() {
        let mut r = Report::new("core", 0, vec!["F1".into()]);
        r.checks.push(record("x", "F1", Status::Pass));
        r.checks.push(record("y", "F1", Status::SkippedHypothesis));
        let text = r.to_text();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().starts_with("pass"));
    }
}
