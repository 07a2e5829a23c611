//! Report rendering: rounded JSON and a flat path/value table.

use serde_json::{Number, Value};

/// Significant digits kept for every real in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds every non-integer number to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_reals(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
                .parse()
                .expect("formatted float parses");
            // -0 and 0 print differently; keep reports stable.
            let r = if r == 0.0 { 0.0 } else { r };
            Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_reals).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_reals(v))).collect()),
        other => other,
    }
}

pub fn render_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// One `(path, scalar)` row per leaf, e.g. `result.posterior[0].p`. Empty
/// arrays and objects appear as leaves.
pub fn flatten(report: &Value) -> Vec<(String, Value)> {
    let mut rows = Vec::new();
    walk(report, String::new(), &mut rows);
    rows
}

fn walk(v: &Value, path: String, rows: &mut Vec<(String, Value)>) {
    match v {
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                walk(x, format!("{path}[{i}]"), rows);
            }
        }
        Value::Object(o) if !o.is_empty() => {
            for (k, x) in o {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(x, p, rows);
            }
        }
        leaf => rows.push((path, leaf.clone())),
    }
}

/// Aligned two-column table; values are written as JSON scalars.
pub fn render_table(report: &Value) -> String {
    let rows = flatten(report);
    let width = rows.iter().map(|(p, _)| p.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (p, v) in rows {
        let pad = width - p.chars().count();
        out.push_str(&p);
        out.push_str(&" ".repeat(pad + 2));
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
