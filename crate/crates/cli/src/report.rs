use std::fmt::Write as _;

use paracr::suite::SubCheck;
use serde::Serialize;
use serde_json::Value;

/// Envelope shared by every command.
#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub input: Value,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub verdict: &'static str,
    pub exit_code: i32,
    pub wall_ms: u128,
    pub result: Value,
}

pub fn fmt_check(c: &SubCheck) -> String {
    let mut s = format!("[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
    match (c.residual, c.tolerance) {
        (Some(r), Some(t)) => {
            let _ = write!(s, "  residual {r:.2e} (tol {t:.0e})");
        }
        (Some(r), None) => {
            let _ = write!(s, "  residual {r:.2e}");
        }
        _ => {}
    }
    if c.exact {
        s.push_str("  exact");
    }
    if let Some(d) = &c.detail {
        let _ = write!(s, "  [{d}]");
    }
    s
}

pub fn fmt_checks(checks: &[SubCheck]) -> String {
    checks.iter().map(|c| fmt_check(c) + "\n").collect()
}
