//! Named residual checks collected by the verification routines.

use std::fmt;

/// Direction of a threshold comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Pass iff `residual <= threshold`.
    AtMost,
    /// Pass iff `residual >= threshold` (negative controls).
    AtLeast,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { name: name.into(), residual, threshold, bound: Bound::AtMost, pass: residual <= threshold }
    }

    pub fn at_least(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { name: name.into(), residual, threshold, bound: Bound::AtLeast, pass: residual >= threshold }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(
            f,
            "{} {}: {:.3e} {} {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            op,
            self.threshold
        )
    }
}

/// Checks plus ungated measurements (signs, overlaps, offsets).
#[derive(Clone, Debug, Default)]
pub struct ResidualReport {
    pub checks: Vec<Check>,
    pub measurements: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn measure(&mut self, name: impl Into<String>, value: f64) {
        self.measurements.push((name.into(), value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.checks.extend(other.checks);
        self.measurements.extend(other.measurements);
        self.notes.extend(other.notes);
    }

    /// Conjunction of all checks; an empty report passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn measurement(&self, name: &str) -> Option<f64> {
        self.measurements.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    /// Largest residual among the `AtMost` checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.bound == Bound::AtMost).map(|c| c.residual).fold(0.0, f64::max)
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for (name, v) in &self.measurements {
            writeln!(f, "  {name} = {v:.6e}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_never_passes() {
        assert!(!Check::at_most("x", f64::NAN, 1.0).pass);
        assert!(!Check::at_least("x", f64::NAN, 1.0).pass);
    }

    #[test]
    fn report_verdict_is_conjunction() {
        let mut r = ResidualReport::new();
        assert!(r.pass());
        r.push(Check::at_most("a", 1e-6, 1e-4));
        r.push(Check::at_least("b", 0.5, 0.1));
        assert!(r.pass());
        r.push(Check::at_most("c", 1e-3, 1e-4));
        assert!(!r.pass());
        assert_eq!(r.max_residual(), 1e-3);
        assert!(r.to_string().contains("FAIL c"));
    }
}
