//! Line-delimited JSON records. Every number is written as a string so that
//! no value passes through floating point.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lattice::Provenance;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Origin of one input used by a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Source {
    pub name: String,
    pub provenance: String,
}

impl Source {
    pub fn new(name: &str, provenance: Provenance) -> Self {
        Source {
            name: name.to_string(),
            provenance: provenance.as_str().to_string(),
        }
    }
}

/// Replace every JSON number by its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}

/// Accumulates records; the first line is a header with the version and the
/// provenance of every input.
#[derive(Clone, Debug, Default)]
pub struct Report {
    sources: Vec<Source>,
    records: Vec<Value>,
    failures: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn source(&mut self, s: Source) {
        if !self.sources.contains(&s) {
            self.sources.push(s);
        }
    }

    /// Add a record of the given kind; the payload must serialize to an object.
    pub fn push(&mut self, kind: &str, payload: impl Serialize) -> Result<()> {
        let v = serde_json::to_value(payload).map_err(|e| Error::Check(e.to_string()))?;
        let mut obj = Map::new();
        obj.insert("kind".into(), Value::String(kind.into()));
        match stringify_numbers(v) {
            Value::Object(o) => obj.extend(o),
            other => {
                obj.insert("value".into(), other);
            }
        }
        self.records.push(Value::Object(obj));
        Ok(())
    }

    /// Record a named check; failed checks make [`Report::ok`] false.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> Result<()> {
        if !passed {
            self.failures += 1;
        }
        let kind = if passed { "check" } else { "failure" };
        self.push(
            kind,
            serde_json::json!({ "check": name, "passed": passed, "detail": detail.into() }),
        )
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn records(&self) -> &[Value] {
        &self.records
    }

    pub fn header(&self) -> Value {
        serde_json::json!({ "kind": "header", "tool": "k3arith", "version": VERSION, "sources": self.sources })
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for v in std::iter::once(self.header()).chain(self.records.iter().cloned()) {
            out += &serde_json::to_string(&v).expect("values serialize");
            out.push('\n');
        }
        out
    }

    /// Flat CSV of records sharing the same scalar fields; nested values are
    /// written as JSON.
    pub fn to_csv(&self) -> String {
        let mut cols: Vec<String> = vec![];
        for r in &self.records {
            if let Value::Object(o) = r {
                for k in o.keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
        }
        let mut out = format!("# k3arith {VERSION}\n");
        for s in &self.sources {
            out += &format!("# source: {} ({})\n", s.name, s.provenance);
        }
        out += &cols.join(",");
        out.push('\n');
        for r in &self.records {
            let row: Vec<String> = cols
                .iter()
                .map(|c| match r.get(c) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => csv_field(s),
                    Some(v) => csv_field(&v.to_string()),
                })
                .collect();
            out += &row.join(",");
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
