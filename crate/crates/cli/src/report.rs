use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How the expected value of a check was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A closed-form value or claim taken from the model being reproduced.
    Reference,
    /// An independent computation of the same quantity.
    Oracle,
    /// An algebraic identity or structural invariant.
    Identity,
}

impl CheckKind {
    fn label(self) -> &'static str {
        match self {
            CheckKind::Reference => "reference",
            CheckKind::Oracle => "oracle",
            CheckKind::Identity => "identity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub kind: CheckKind,
    pub expected: Value,
    pub computed: Value,
    /// `0` for exact comparisons.
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Ordered list of checks plus reported quantities that carry no verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub findings: BTreeMap<String, Value>,
    pub summary: Summary,
}

fn json<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl ScenarioReport {
    pub fn new(scenario: &str, seed: Option<u64>) -> Self {
        Self {
            scenario: scenario.to_string(),
            seed,
            checks: Vec::new(),
            findings: BTreeMap::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, check: Check) -> bool {
        let pass = check.pass;
        self.summary.total += 1;
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(check);
        pass
    }

    /// Exact comparison of serialized values.
    pub fn exact<E: Serialize, C: Serialize>(
        &mut self,
        description: &str,
        kind: CheckKind,
        expected: E,
        computed: C,
    ) -> bool {
        let (expected, computed) = (json(expected), json(computed));
        let pass = expected == computed;
        self.push(Check {
            description: description.into(),
            kind,
            expected,
            computed,
            tolerance: 0.0,
            pass,
        })
    }

    /// `|expected − computed| ≤ tolerance`; NaN fails.
    pub fn close(&mut self, description: &str, kind: CheckKind, expected: f64, computed: f64, tolerance: f64) -> bool {
        let pass = (expected - computed).abs() <= tolerance;
        self.push(Check {
            description: description.into(),
            kind,
            expected: json(expected),
            computed: json(computed),
            tolerance,
            pass,
        })
    }

    /// A nonnegative residual that should vanish.
    pub fn residual(&mut self, description: &str, kind: CheckKind, residual: f64, tolerance: f64) -> bool {
        let pass = residual <= tolerance;
        self.push(Check {
            description: description.into(),
            kind,
            expected: json(0.0),
            computed: json(residual),
            tolerance,
            pass,
        })
    }

    pub fn note<T: Serialize>(&mut self, key: &str, value: T) {
        self.findings.insert(key.to_string(), json(value));
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, description: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.description == description)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table; failing rows are followed by their values.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map_or(String::new(), |s| format!(" (seed {s})"));
        let _ = writeln!(out, "scenario: {}{seed}", self.scenario);
        let _ = writeln!(out, "{:<8}{:<11}{:>10}  check", "status", "kind", "tolerance");
        for c in &self.checks {
            let tol = if c.tolerance == 0.0 {
                "exact".to_string()
            } else {
                format!("{:.0e}", c.tolerance)
            };
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status:<8}{:<11}{tol:>10}  {}", c.kind.label(), c.description);
            if !c.pass {
                let _ = writeln!(out, "{:29}expected {}", "", c.expected);
                let _ = writeln!(out, "{:29}computed {}", "", c.computed);
            }
        }
        for (k, v) in &self.findings {
            let _ = writeln!(out, "{:<29}{k} = {v}", "note");
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}
