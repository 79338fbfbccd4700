//! Report assembly and emission.
//!
//! Every number inside records and summaries is tagged: exact values as
//! {"kind": "exact", "value": "a/b"} and floating-point values as
//! {"kind": "float", "value": x, "tol": t}.

use std::collections::BTreeSet;
use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{ExperimentConfig, Format};

pub const SCHEMA_VERSION: &str = "additive-lab/1";

fn ratio_string<T: Display + PartialEq + From<u8>>(numer: &T, denom: &T) -> String {
    if *denom == T::from(1u8) {
        numer.to_string()
    } else {
        format!("{numer}/{denom}")
    }
}

pub fn int(v: impl Into<u128>) -> Value {
    json!({"kind": "exact", "value": v.into().to_string()})
}

pub fn signed(v: i64) -> Value {
    json!({"kind": "exact", "value": v.to_string()})
}

pub fn ratio(r: &Ratio<u64>) -> Value {
    json!({"kind": "exact", "value": ratio_string(r.numer(), r.denom())})
}

pub fn big(r: &BigRational) -> Value {
    json!({"kind": "exact", "value": ratio_string::<BigInt>(r.numer(), r.denom())})
}

pub fn float(v: f64, tol: f64) -> Value {
    if v.is_finite() {
        json!({"kind": "float", "value": v, "tol": tol})
    } else {
        json!({"kind": "float", "value": v.to_string(), "tol": tol})
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RngInfo {
    pub generator: &'static str,
    pub seed: u64,
    /// How stream ids are assigned.
    pub streams: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: ExperimentConfig,
    pub rng: RngInfo,
    pub records: Vec<Value>,
    pub summary: Value,
    pub error: Option<Value>,
    pub timing: Timing,
}

impl Report {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without its timing field; identical configurations give
    /// identical bytes here.
    pub fn canonical_json(&self) -> String {
        let mut v = self.to_value();
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string(&v).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per record, nested keys joined with '.', tagged numbers
    /// reduced to their value and lists written as JSON.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let rows: Vec<Map<String, Value>> = self
            .records
            .iter()
            .map(|r| {
                let mut flat = Map::new();
                flatten("", r, &mut flat);
                flat
            })
            .collect();
        let columns: BTreeSet<&String> = rows.iter().flat_map(|r| r.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(columns.iter().map(|c| c.as_str()))?;
        for r in &rows {
            w.write_record(columns.iter().map(|c| match r.get(*c) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            }))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

fn is_tagged(m: &Map<String, Value>) -> bool {
    m.contains_key("kind") && m.contains_key("value")
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(m) if is_tagged(m) => {
            out.insert(prefix.to_string(), m["value"].clone());
        }
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        assert_eq!(ratio(&Ratio::new(2, 8)), json!({"kind": "exact", "value": "1/4"}));
        assert_eq!(ratio(&Ratio::new(4, 2)), json!({"kind": "exact", "value": "2"}));
        assert_eq!(int(7u32), json!({"kind": "exact", "value": "7"}));
        let b = BigRational::new(BigInt::from(-3), BigInt::from(6));
        assert_eq!(big(&b), json!({"kind": "exact", "value": "-1/2"}));
        assert_eq!(float(0.5, 1e-9), json!({"kind": "float", "value": 0.5, "tol": 1e-9}));
    }

    #[test]
    fn flattening() {
        let mut out = Map::new();
        flatten("", &json!({"a": {"b": int(1u8), "c": [1, 2]}, "d": "x"}), &mut out);
        assert_eq!(out["a.b"], json!("1"));
        assert_eq!(out["a.c"], json!([1, 2]));
        assert_eq!(out["d"], json!("x"));
    }
}
