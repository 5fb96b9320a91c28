// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// One verified property: passes iff `max_residual ≤ tolerance`.
///
/// Non-finite residuals serialize as `null` and always fail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip)]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            note: None,
        }
    }

    pub fn failed(name: impl Into<String>, tolerance: f64, note: impl ToString) -> Self {
        Self {
            note: Some(note.to_string()),
            ..Self::new(name, f64::INFINITY, tolerance)
        }
    }

    /// `1` when `holds` is false, against tolerance `0`.
    pub fn predicate(name: impl Into<String>, holds: bool) -> Self {
        Self::new(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

pub type CheckFn<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, Value>,
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            values: BTreeMap::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.to_string(), value.into());
    }

    /// Runs the groups concurrently and appends their checks sorted by name.
    ///
    /// Per-group wall times (ms) are recorded only when `timed` is set, so
    /// that reports stay byte-identical across runs by default.
    pub fn run(&mut self, groups: Vec<(String, CheckFn<'_>)>, timed: bool) {
        let results: Vec<(String, Vec<Check>, f64)> = groups
            .par_iter()
            .map(|(label, f)| {
                let start = Instant::now();
                let checks = f();
                (label.clone(), checks, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect();
        for (label, checks, ms) in results {
            if timed {
                self.timings.insert(label, ms);
            }
            self.checks.extend(checks);
        }
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        let mut out = format!(
            "{:<width$}  {:>12}  {:>9}  result\n",
            "check", "max_residual", "tolerance"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>12.3e}  {:>9.1e}  {}",
                c.name,
                c.max_residual,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" }
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!("  ({note})"));
            }
            out.push('\n');
        }
        for (k, v) in &self.values {
            match v {
                Value::Array(items) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {item}\n"));
                    }
                }
                _ => out.push_str(&format!("{k} = {v}\n")),
            }
        }
        out
    }
}
