use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::Result;

#[derive(Debug, Serialize)]
pub struct Budgets {
    pub enumeration: u128,
    pub closure: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct Truncation {
    pub loglog_floor: f64,
    pub small_regime_limit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_cutoff: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_norm: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub seed: Option<u64>,
    pub budgets: Budgets,
    pub truncation: Truncation,
}

#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub params: Value,
    pub rows: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    pub meta: Meta,
}

impl OutputEnvelope {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => csv_table(&self.rows),
        }
    }
}

/// Twelve significant digits, shortest form.
pub fn real(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    rounded.to_string()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => real(n.as_f64().expect("f64")),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// One column per top-level field of the first row.
fn csv_table(rows: &[Value]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        Some(_) => vec!["value".into()],
        None => Vec::new(),
    };
    if !header.is_empty() {
        w.write_record(&header)?;
    }
    for row in rows {
        let record: Vec<String> = match row {
            Value::Object(m) => header.iter().map(|k| cell(m.get(k).unwrap_or(&Value::Null))).collect(),
            other => vec![cell(other)],
        };
        w.write_record(&record)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("utf-8 csv"))
}
