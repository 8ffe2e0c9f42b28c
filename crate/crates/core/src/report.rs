//! The JSON report envelope written by every CLI command, and flat CSV
//! tables for per-shift and per-offset data.
//!
//! Every report is an object with exactly these keys:
//!
//! | key            | type                         |
//! |----------------|------------------------------|
//! | `command`      | string                       |
//! | `version`      | string                       |
//! | `seed`         | integer or null              |
//! | `inputs`       | object                       |
//! | `parameters`   | object                       |
//! | `results`      | object                       |
//! | `certificates` | object                       |
//! | `violations`   | array of strings             |
//! | `timing_ms`    | non-negative integer         |
//!
//! Rationals inside any of these are `"p/q"` strings. Two runs with the same
//! inputs produce identical reports once `timing_ms` is removed.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::io::Write;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const KEYS: [&str; 9] = [
    "command",
    "version",
    "seed",
    "inputs",
    "parameters",
    "results",
    "certificates",
    "violations",
    "timing_ms",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub inputs: Map<String, Value>,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub certificates: Map<String, Value>,
    pub violations: Vec<String>,
    pub timing_ms: u64,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            version: VERSION.to_string(),
            seed: None,
            inputs: Map::new(),
            parameters: Map::new(),
            results: Map::new(),
            certificates: Map::new(),
            violations: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn input<T: Serialize>(&mut self, key: &str, v: &T) -> &mut Self {
        self.inputs.insert(key.into(), to_value(v));
        self
    }

    pub fn param<T: Serialize>(&mut self, key: &str, v: &T) -> &mut Self {
        self.parameters.insert(key.into(), to_value(v));
        self
    }

    pub fn result<T: Serialize>(&mut self, key: &str, v: &T) -> &mut Self {
        self.results.insert(key.into(), to_value(v));
        self
    }

    pub fn certificate<T: Serialize>(&mut self, key: &str, v: &T) -> &mut Self {
        self.certificates.insert(key.into(), to_value(v));
        self
    }

    pub fn violations<I: IntoIterator<Item = String>>(&mut self, vs: I) -> &mut Self {
        self.violations.extend(vs);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report as JSON with `timing_ms` removed.
    pub fn without_timing(&self) -> Value {
        let mut v = to_value(self);
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    }

    /// 0 when no violation was recorded, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            3
        }
    }
}

/// Checks a parsed report against the documented layout.
pub fn validate_report(v: &Value) -> Result<()> {
    let bad = |m: String| Err(Error::Parse(format!("report schema: {m}")));
    let Some(obj) = v.as_object() else {
        return bad("top level is not an object".into());
    };
    for k in obj.keys() {
        if !KEYS.contains(&k.as_str()) {
            return bad(format!("unknown key {k:?}"));
        }
    }
    for k in KEYS {
        let Some(field) = obj.get(k) else {
            return bad(format!("missing key {k:?}"));
        };
        let ok = match k {
            "command" | "version" => field.is_string(),
            "seed" => field.is_null() || field.is_u64(),
            "inputs" | "parameters" | "results" | "certificates" => field.is_object(),
            "violations" => field.as_array().is_some_and(|a| a.iter().all(Value::is_string)),
            _ => field.is_u64(),
        };
        if !ok {
            return bad(format!("key {k:?} has the wrong type"));
        }
    }
    if let Some(f) = find_float(v) {
        return bad(format!("floating-point value {f} outside a score field"));
    }
    Ok(())
}

/// Floats are allowed only under `magnitude` keys (spectrum scores).
fn find_float(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => n.as_f64(),
        Value::Array(a) => a.iter().find_map(find_float),
        Value::Object(o) => o.iter().filter(|(k, _)| *k != "magnitude").find_map(|(_, v)| find_float(v)),
        _ => None,
    }
}

/// A flat table for `--csv` output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

/// Writes the tables one after another, each preceded by a `# name` line.
pub fn write_csv<W: Write>(tables: &[Table], out: W) -> Result<()> {
    let mut out = out;
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "# {}", t.name)?;
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(&t.header).map_err(csv_err)?;
        for r in &t.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
