//! Number formatting: `inf` for infinities in both CSV and JSON.

use serde_json::Value;

/// Shortest round-trip form, with `-0` printed as `0`.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn json_num(x: f64) -> Value {
    match serde_json::Number::from_f64(if x == 0.0 { 0.0 } else { x }) {
        Some(n) => Value::Number(n),
        None => Value::String(num(x)),
    }
}

pub fn json_opt(x: Option<f64>) -> Value {
    x.map(json_num).unwrap_or(Value::Null)
}
