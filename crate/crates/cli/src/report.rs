use std::io::Write;
use std::time::Instant;

use serde::Serialize;

/// One line of the JSON report stream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub runtime_ms: f64,
}

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

impl CheckReport {
    pub fn new(check: impl Into<String>, max_error: f64, tolerance: f64, started: Instant) -> Self {
        Self {
            check: check.into(),
            passed: max_error.is_finite() && max_error <= tolerance,
            max_error: round_sig(max_error),
            tolerance: round_sig(tolerance),
            runtime_ms: round_sig(started.elapsed().as_secs_f64() * 1e3),
        }
    }

    pub fn write_line<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        // NaN has no JSON form and serializes as null
        serde_json::to_writer(&mut *out, self)?;
        writeln!(out)
    }
}
