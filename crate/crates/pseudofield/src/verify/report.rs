//! Check reports: per-identity residual statistics with a stable JSON form.
//!
//! Struct fields are declared in sorted key order and checks keep their
//! insertion order, so serializing the same report twice is byte-identical
//! and diffs stay empty across runs with the same configuration.

use serde::Serialize;

/// A number that serializes as a JSON number in float mode and as a decimal
/// string in rational mode, preserving exactness.
#[derive(Clone, Debug, PartialEq)]
pub enum ReportNumber {
    Float(f64),
    Exact(String),
}

impl Serialize for ReportNumber {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        match self {
            ReportNumber::Float(v) => s.serialize_f64(*v),
            ReportNumber::Exact(t) => s.serialize_str(t),
        }
    }
}

/// Outcome of one identity over the sample stream.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub check_id: String,
    pub failures: u64,
    pub max_residual: ReportNumber,
    pub paper_ref: String,
    pub samples_attempted: u64,
    pub samples_defined: u64,
}

impl CheckEntry {
    pub fn passed(&self, tolerance: f64, exact: bool) -> bool {
        if self.failures > 0 {
            return false;
        }
        if exact {
            // Exact mode has no tolerance band; failures carry the verdict.
            true
        } else {
            match &self.max_residual {
                ReportNumber::Float(v) => *v <= tolerance,
                ReportNumber::Exact(_) => true,
            }
        }
    }
}

/// A full report for one instance and configuration.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckEntry>,
    pub instance: String,
    pub mode: String,
    pub n: usize,
    pub pass: bool,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: ReportNumber,
}

impl CheckReport {
    pub fn new(
        instance: &str,
        n: usize,
        mode: &str,
        seed: u64,
        samples: u64,
        tolerance: f64,
        exact: bool,
        checks: Vec<CheckEntry>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.passed(tolerance, exact));
        CheckReport {
            checks,
            instance: instance.to_string(),
            mode: mode.to_string(),
            n,
            pass,
            samples,
            seed,
            tolerance: if exact {
                ReportNumber::Exact("0".to_string())
            } else {
                ReportNumber::Float(tolerance)
            },
        }
    }

    pub fn entry(&self, check_id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.check_id == check_id)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization");
        out.push('\n');
        out
    }

    /// Merge several suites into one report; the pass flag is recomputed
    /// from the combined entries.
    pub fn merge(reports: Vec<CheckReport>) -> CheckReport {
        assert!(!reports.is_empty());
        let mut iter = reports.into_iter();
        let mut first = iter.next().unwrap();
        for r in iter {
            first.pass = first.pass && r.pass;
            first.checks.extend(r.checks);
        }
        first
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, failures: u64, residual: f64) -> CheckEntry {
        CheckEntry {
            check_id: id.to_string(),
            failures,
            max_residual: ReportNumber::Float(residual),
            paper_ref: "test".to_string(),
            samples_attempted: 10,
            samples_defined: 10,
        }
    }

    #[test]
    fn pass_flag_combines_failures_and_residuals() {
        let good = CheckReport::new("x", 2, "float", 1, 10, 1e-9, false, vec![entry("a", 0, 0.0)]);
        assert!(good.pass);
        let loud = CheckReport::new("x", 2, "float", 1, 10, 1e-9, false, vec![entry("a", 0, 1e-3)]);
        assert!(!loud.pass);
        let failed = CheckReport::new("x", 2, "float", 1, 10, 1e-9, false, vec![entry("a", 1, 0.0)]);
        assert!(!failed.pass);
    }

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let r = CheckReport::new("x", 2, "float", 1, 10, 1e-9, false, vec![entry("a", 0, 0.0)]);
        let a = r.to_json();
        let b = r.to_json();
        assert_eq!(a, b);
        let top_keys: Vec<usize> = ["\"checks\"", "\"instance\"", "\"mode\"", "\"n\"", "\"pass\"", "\"samples\"", "\"seed\"", "\"tolerance\""]
            .iter()
            .map(|k| a.find(k).unwrap())
            .collect();
        assert!(top_keys.windows(2).all(|w| w[0] < w[1]), "{a}");
    }

    #[test]
    fn rational_numbers_serialize_as_strings() {
        let mut e = entry("a", 0, 0.0);
        e.max_residual = ReportNumber::Exact("0".to_string());
        let r = CheckReport::new("x", 2, "rational", 1, 10, 1e-9, true, vec![e]);
        let json = r.to_json();
        assert!(json.contains("\"max_residual\": \"0\""), "{json}");
        assert!(json.contains("\"tolerance\": \"0\""), "{json}");
    }
}
