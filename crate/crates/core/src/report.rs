use serde::{Deserialize, Serialize};
use std::fmt;

/// One named residual compared against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Residual report of an axiom or identity family; passes iff every entry passes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
    /// Measured quantities that are printed but do not enter the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Check>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, residual: f64, threshold: f64) {
        // NaN residuals must fail.
        let passed = residual <= threshold;
        self.checks.push(Check { name: name.to_string(), residual, threshold, passed });
    }

    /// Records a check whose verdict is "residual above threshold".
    pub fn push_lower_bound(&mut self, name: &str, value: f64, bound: f64) {
        let passed = value > bound;
        self.checks.push(Check { name: name.to_string(), residual: value, threshold: bound, passed });
    }

    pub fn note(&mut self, name: &str, value: f64) {
        self.notes.push(Check { name: name.to_string(), residual: value, threshold: 0.0, passed: true });
    }

    pub fn extend(&mut self, prefix: &str, other: AxiomReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for mut c in other.notes {
            c.name = format!("{prefix}{}", c.name);
            self.notes.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().chain(self.notes.iter()).find(|c| c.name == name)
    }

    pub fn residual(&self, name: &str) -> f64 {
        self.get(name).map(|c| c.residual).unwrap_or(f64::NAN)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.residual))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<4} {:<40} residual {:.3e} (threshold {:.1e})",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.residual,
                c.threshold
            )?;
        }
        for c in &self.notes {
            writeln!(f, "note {:<40} value {:.3e}", c.name, c.residual)?;
        }
        Ok(())
    }
}
