//! Serializable check reports.

use std::time::Instant;

use quadlat::checks::Check;
use quadlat::report::{Detail, Outcome};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub reference: String,
    pub status: Status,
    pub details: Value,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn from_outcome(check_id: &str, reference: &str, outcome: &Outcome, elapsed_ms: u64) -> Self {
        Self {
            check_id: check_id.to_owned(),
            reference: reference.to_owned(),
            status: if outcome.passed { Status::Pass } else { Status::Fail },
            details: details_to_json(&outcome.details),
            failures: outcome.failures.clone(),
            elapsed_ms,
        }
    }

    pub fn run(check: &Check) -> Self {
        let start = Instant::now();
        let outcome = (check.run)();
        Self::from_outcome(check.id, check.reference, &outcome, start.elapsed().as_millis() as u64)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One summary line, followed by failed keys if any.
    pub fn text(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{tag}  {:<30} {:>8} ms  {}", self.check_id, self.elapsed_ms, self.reference);
        for f in &self.failures {
            s.push_str(&format!("\n      failed: {f}"));
        }
        s
    }
}

/// Integers outside the `i64` range and rationals become strings.
pub fn detail_to_json(d: &Detail) -> Value {
    match d {
        Detail::Bool(b) => Value::Bool(*b),
        Detail::Int(i) => i64::try_from(*i).map_or_else(|_| Value::String(i.to_string()), Value::from),
        Detail::Rat(_) => Value::String(d.to_string()),
        Detail::Text(s) => Value::String(s.clone()),
        Detail::List(items) => Value::Array(items.iter().map(detail_to_json).collect()),
        Detail::Map(entries) => details_to_json(entries),
    }
}

pub fn details_to_json(entries: &[(String, Detail)]) -> Value {
    Value::Object(entries.iter().map(|(k, v)| (k.clone(), detail_to_json(v))).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadlat::Rat;

    #[test]
    fn detail_conversion() {
        let d = Detail::map([("a", Detail::from(Rat::new(1, 24))), ("b", Detail::from(vec![1i64, 2]))]);
        assert_eq!(detail_to_json(&d), serde_json::json!({"a": "1/24", "b": [1, 2]}));
        assert_eq!(detail_to_json(&Detail::Int(i128::MAX)), Value::String(i128::MAX.to_string()));
    }
}
