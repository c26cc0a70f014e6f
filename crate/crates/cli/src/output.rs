use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::Value;
use swanson_core::report::Bound;
use swanson_core::{Check, ResidualReport};

use crate::args::Format;
use crate::CliError;

/// Rounds to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Text form used in CSV cells: positional notation for moderate
/// magnitudes, exponent notation otherwise.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(v);
    if r == 0.0 {
        return "0".into();
    }
    if (1e-4..1e12).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Number serialized with 12 significant digits; non-finite values become
/// `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round_sig(self.0))
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub residual: Num,
    pub threshold: Num,
    /// `at_most` or `at_least`.
    pub bound: &'static str,
    pub pass: bool,
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name.clone(),
            residual: Num(c.residual),
            threshold: Num(c.threshold),
            bound: match c.bound {
                Bound::AtMost => "at_most",
                Bound::AtLeast => "at_least",
            },
            pass: c.pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Measurement {
    pub name: String,
    pub value: Num,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Num>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&v| Num(v)).collect());
    }
}

/// Machine-readable result of one command. `pass` is the conjunction of the
/// check verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub checks: Vec<CheckRow>,
    pub measurements: Vec<Measurement>,
    pub notes: Vec<String>,
    pub spectra: Vec<Table>,
    pub env: BTreeMap<String, Value>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut env = BTreeMap::new();
        env.insert("command".into(), Value::from(command));
        env.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        Self { checks: Vec::new(), measurements: Vec::new(), notes: Vec::new(), spectra: Vec::new(), env, pass: true }
    }

    pub fn env_number(&mut self, key: &str, v: f64) {
        self.env.insert(key.into(), serde_json::to_value(Num(v)).unwrap_or(Value::Null));
    }

    pub fn env_value(&mut self, key: &str, v: impl Into<Value>) {
        self.env.insert(key.into(), v.into());
    }

    pub fn push_check(&mut self, c: &Check) {
        self.pass &= c.pass;
        self.checks.push(c.into());
    }

    pub fn measure(&mut self, name: impl Into<String>, v: f64) {
        self.measurements.push(Measurement { name: name.into(), value: Num(v) });
    }

    /// Adds every check, measurement and note, prefixing names with
    /// `prefix`.
    pub fn absorb(&mut self, prefix: &str, r: &ResidualReport) {
        for c in &r.checks {
            let mut c = c.clone();
            c.name = format!("{prefix}{}", c.name);
            self.push_check(&c);
        }
        for (name, v) in &r.measurements {
            self.measure(format!("{prefix}{name}"), *v);
        }
        for n in &r.notes {
            self.notes.push(format!("{prefix}{n}"));
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Invalid(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Checks as `name,residual,threshold,pass`, followed by each table as
    /// its own block after a blank line and a `# name` line.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        if !self.checks.is_empty() {
            let rows = self.checks.iter().map(|c| {
                vec![c.name.clone(), format_number(c.residual.0), format_number(c.threshold.0), c.pass.to_string()]
            });
            out.push_str(&csv_block(&["name", "residual", "threshold", "pass"], rows)?);
        }
        for t in &self.spectra {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("# {}\n", t.name));
            out.push_str(&table_csv(t)?);
        }
        Ok(out)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

pub fn table_csv(t: &Table) -> Result<String, CliError> {
    let columns: Vec<&str> = t.columns.iter().map(String::as_str).collect();
    csv_block(&columns, t.rows.iter().map(|r| r.iter().map(|v| format_number(v.0)).collect()))
}

fn csv_block<I>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Invalid(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round_sig(1.234_567_890_123_456), 1.234_567_890_12);
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(2.0), "2");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(3.1e-16), "3.1e-16");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn json_numbers_are_rounded_and_non_finite_is_null() {
        let v = serde_json::to_string(&[Num(1.0 / 3.0), Num(f64::INFINITY), Num(1e-20)]).unwrap();
        assert_eq!(v, "[0.333333333333,null,1e-20]");
    }

    #[test]
    fn csv_quotes_names_and_uses_lf() {
        let mut r = RunReport::new("t");
        r.push_check(&Check::at_most("max r([h, I-])", 1e-3, 1e-4));
        let s = r.to_csv().unwrap();
        assert_eq!(s, "name,residual,threshold,pass\n\"max r([h, I-])\",0.001,0.0001,false\n");
        assert!(!r.pass);
    }

    #[test]
    fn verdict_is_conjunction() {
        let mut r = RunReport::new("t");
        assert!(r.pass);
        r.push_check(&Check::at_most("a", 1.0, 2.0));
        r.push_check(&Check::at_least("b", 1.0, 2.0));
        assert!(!r.pass);
    }
}
