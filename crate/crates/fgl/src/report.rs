//! Named pass/fail reporting for the verification suites.
//!
//! A [`Report`] collects [`Check`] outcomes under a suite name. Checks are
//! sorted by name before rendering so that output bytes do not depend on
//! evaluation order, and detail strings never contain timing or other
//! run-dependent data.

use serde_json::{json, Value};

/// One named check with a short, deterministic detail line.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A collection of checks under a suite name.
#[derive(Clone, Debug)]
pub struct Report {
    suite: String,
    checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    /// Record an already-evaluated outcome.
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    /// Record a fallible check: `Ok(detail)` passes, `Err` fails with the
    /// error text as the detail line.
    pub fn record(&mut self, name: &str, outcome: crate::Result<String>) {
        match outcome {
            Ok(detail) => self.push(name, true, detail),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }

    /// Absorb another report's checks (suite name of `self` wins).
    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    fn sorted(&self) -> Vec<&Check> {
        let mut v: Vec<&Check> = self.checks.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "checks": self
                .sorted()
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in self.sorted() {
            if c.pass {
                out.push_str(&format!("  {}: pass\n", c.name));
            } else {
                out.push_str(&format!("  {}: FAIL ({})\n", c.name, c.detail));
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.pass() { "pass" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_render_sorted_by_name() {
        let mut r = Report::new("demo");
        r.push("zeta", true, "");
        r.push("alpha", true, "ok");
        let text = r.render_text();
        let a = text.find("alpha").unwrap();
        let z = text.find("zeta").unwrap();
        assert!(a < z);
        assert!(r.pass());
        let v = r.to_json();
        assert_eq!(v["checks"][0]["name"], "alpha");
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn one_failure_fails_the_report() {
        let mut r = Report::new("demo");
        r.push("good", true, "");
        r.record("bad", Err(crate::Error::NotInvolutive));
        assert!(!r.pass());
        assert!(r.render_text().contains("bad: FAIL"));
    }
}
