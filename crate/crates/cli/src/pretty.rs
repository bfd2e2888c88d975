//! Plain-text tables derived from the JSON reports.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.10}"),
            _ => n.to_string(),
        },
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn per_vertex_table(out: &mut String, rows: &[Value]) {
    let _ = writeln!(out, "  {:>6}  {:>14}  {:>14}  {:>14}", "v", "target", "achieved", "slack");
    for r in rows {
        let v = r
            .get("v")
            .and_then(Value::as_u64)
            .map(|v| v.to_string())
            .or_else(|| r.get("label").and_then(Value::as_str).map(str::to_string))
            .unwrap_or_default();
        let t = r.get("target").and_then(Value::as_f64).unwrap_or(f64::NAN);
        let a = r.get("achieved").and_then(Value::as_f64).unwrap_or(f64::NAN);
        let _ = writeln!(out, "  {v:>6}  {t:>14.10}  {a:>14.10}  {:>14.3e}", a - t);
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match (k.as_str(), val) {
                    ("per_vertex", Value::Array(rows)) if rows.iter().all(|r| r.get("target").is_some()) => {
                        let _ = writeln!(out, "{pad}per_vertex:");
                        per_vertex_table(out, rows);
                    }
                    // Witnesses and mixtures are for machines.
                    ("witness" | "mixture" | "support" | "cover", _) => {}
                    (_, Value::Object(_)) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_into(out, val, indent + 2);
                    }
                    (_, Value::Array(items)) if items.iter().any(Value::is_object) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for item in items {
                            render_into(out, item, indent + 2);
                            out.push('\n');
                        }
                    }
                    (_, Value::Array(items)) => {
                        let cells: Vec<String> = items.iter().map(scalar).collect();
                        let _ = writeln!(out, "{pad}{k:<20} [{}]", cells.join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k:<20} {}", scalar(val));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn certificate_table() {
        let v = json!({
            "theorem": "local_shearer",
            "pass": true,
            "per_vertex": [{ "v": 0, "target": 0.5, "achieved": 0.5 }],
            "witness": { "y_star": 0.0 },
        });
        let s = render(&v);
        assert!(s.contains("theorem"));
        assert!(s.contains("achieved"));
        assert!(!s.contains("y_star"));
    }
}
