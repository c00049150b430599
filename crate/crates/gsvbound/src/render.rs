//! Text and DOT renderings. Text mode is a flattening of the JSON value, so both
//! modes always carry the same numbers.

use std::fmt::Write;

use gsvbound_core::blowup::{Chart, ResolutionTrace};
use serde_json::Value;

/// One `path = value` line per leaf, dotted paths, array indices in brackets.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(v, p, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((path, format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, format!("{path}[{i}]"), out);
            }
        }
        _ => out.push((path, scalar_text(value))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn text(value: &Value) -> String {
    let mut s = String::new();
    for (k, v) in flatten(value) {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}

/// Value at a dotted path such as `identity_checks.slack_nonnegative` or `components[0].mu`.
pub fn lookup<'a>(value: &'a Value, path: &str) -> Option<&'a Value> {
    let mut cur = value;
    for part in path.split('.') {
        let (key, indices) = match part.find('[') {
            Some(i) => (&part[..i], &part[i..]),
            None => (part, ""),
        };
        if !key.is_empty() {
            cur = cur.get(key)?;
        }
        for idx in indices.split('[').filter(|s| !s.is_empty()) {
            let n: usize = idx.strip_suffix(']')?.parse().ok()?;
            cur = cur.get(n)?;
        }
    }
    Some(cur)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Chain of points visited by the resolution, edges labelled by chart and center.
pub fn trace_dot(trace: &ResolutionTrace) -> String {
    let mut s = String::from("digraph resolution {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, step) in trace.steps.iter().enumerate() {
        let label = format!(
            "p{i}\\nB: {}\\nnu_F={} nu_B={} mu={} tau={} gsv={} phi={}",
            dot_escape(&step.curve.to_string()),
            step.nu_f,
            step.nu_b,
            step.mu,
            step.tau,
            step.gsv,
            step.phi
        );
        let _ = writeln!(s, "  p{i} [label=\"{label}\"];");
    }
    for (i, step) in trace.steps.iter().enumerate().skip(1) {
        let loc = step.location.as_ref().expect("every step after the first has a location");
        let chart = match loc.chart {
            Chart::Chart1 => "chart 1",
            Chart::Chart2 => "chart 2",
        };
        let kind = if step.dicritical == Some(true) { ", dicritical" } else { "" };
        let _ = writeln!(s, "  p{} -> p{i} [label=\"{chart}, c={}{kind}\"];", i - 1, loc.center);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_and_lookup_agree() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": "x"}]}});
        let flat = flatten(&v);
        assert_eq!(
            flat,
            vec![
                ("a".into(), "1".into()),
                ("b.c".into(), "[1, 2]".into()),
                ("b.d[0].e".into(), "x".into()),
            ]
        );
        assert_eq!(lookup(&v, "b.d[0].e"), Some(&json!("x")));
        assert_eq!(lookup(&v, "b.c[1]"), Some(&json!(2)));
        assert_eq!(lookup(&v, "b.z"), None);
    }
}
