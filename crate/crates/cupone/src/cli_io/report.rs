use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::binomial_ring::RingSpec;
use crate::exact_linear::AbelianInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Text lines and structured results of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub ring: RingSpec,
    lines: Vec<String>,
    results: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, ring: RingSpec) -> Self {
        Report { command: command.to_string(), ring, lines: Vec::new(), results: Map::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn results(&self) -> &Map<String, Value> {
        &self.results
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = format!("command: {}\nring: {}\n", self.command, self.ring);
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let v = json!({ "command": self.command, "ring": self.ring.to_string(), "results": self.results });
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

/// Integers that fit in i64 as numbers, larger ones as strings.
pub fn int_json(a: &BigInt) -> Value {
    match a.to_i64() {
        Some(v) => json!(v),
        None => json!(a.to_string()),
    }
}

pub fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn group_json(a: &AbelianInvariants) -> Value {
    json!({ "rank": a.rank, "torsion": ints_json(&a.torsion) })
}
