//! Number formatting and document assembly shared by the command-line
//! front end.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal that round-trips the 12-digit rounding of `x`.
pub fn fmt12(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

/// Rounds every floating-point number inside a JSON document. Integers
/// are left as they are.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub artifact: &'static str,
    pub version: &'static str,
    pub params: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Metadata {
    pub fn new(timestamp: bool) -> Self {
        Metadata {
            artifact: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            params: Map::new(),
            tolerances: Map::new(),
            timestamp: timestamp.then(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs())
            }),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.into(), value.into());
        self
    }

    /// `# key: value` lines for the head of a CSV file.
    pub fn csv_comment(&self) -> String {
        let mut out = format!("# artifact: {} {}\n", self.artifact, self.version);
        for (k, v) in &self.params {
            out.push_str(&format!("# param {k}: {v}\n"));
        }
        for (k, v) in &self.tolerances {
            out.push_str(&format!("# tolerance {k}: {v}\n"));
        }
        if let Some(t) = self.timestamp {
            out.push_str(&format!("# timestamp: {t}\n"));
        }
        out
    }
}

/// `{"metadata": …, <body fields>}` with every float rounded, pretty printed.
pub fn json_document(meta: &Metadata, body: impl Serialize) -> String {
    let mut doc = Map::new();
    doc.insert("metadata".into(), serde_json::to_value(meta).expect("metadata serializes"));
    match serde_json::to_value(body).expect("body serializes") {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut text = serde_json::to_string_pretty(&round_json(Value::Object(doc))).expect("valid json");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(-1148.767713261234567), "-1148.76771326");
        assert_eq!(fmt12(-0.5), "-0.5");
        assert_eq!(fmt12(1.0), "1");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt12(-0.0), "0");
        assert_eq!(fmt12(1.234567890123456e-20), "0.0000000000000000000123456789012");
        assert_eq!(round12(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn json_rounding_keeps_integers() {
        let v = round_json(json!({"a": 1, "b": [std::f64::consts::PI, 2], "c": {"d": -2.0}}));
        assert_eq!(v, json!({"a": 1, "b": [3.14159265359, 2], "c": {"d": -2.0}}));
    }

    #[test]
    fn metadata_without_timestamp_is_stable() {
        let m = Metadata::new(false).param("M", 0).tolerance("table_sig_figs", 5.0);
        assert_eq!(m.csv_comment(), Metadata::new(false).param("M", 0).tolerance("table_sig_figs", 5.0).csv_comment());
        assert!(!m.csv_comment().contains("timestamp"));
        assert!(Metadata::new(true).csv_comment().contains("timestamp"));
    }
}
