//! Human-readable rendering of output documents.

use std::fmt::Write;

use serde_json::Value;

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().filter(|r| !r.is_empty())?.iter().map(|x| x.as_number().map(|n| n.to_string())).collect())
        .collect::<Option<_>>()?;
    cells.iter().all(|r| r.len() == cells[0].len()).then_some(cells)
}

fn render_matrix(rows: &[Vec<String>], indent: usize, out: &mut String) {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{:indent$}[ {} ]", "", cells.join("  "));
    }
}

/// Ascending polynomial with explicit signs, e.g. `1 - 2λ + λ^2`.
pub fn render_poly(coeffs: &[Value]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        let text = c.to_string();
        if text == "0" {
            continue;
        }
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        let monomial = match k {
            0 => mag.clone(),
            _ => {
                let coef = if mag == "1" { String::new() } else { mag.clone() };
                let power = if k == 1 { "λ".to_string() } else { format!("λ^{k}") };
                format!("{coef}{power}")
            }
        };
        if out.is_empty() {
            out = if neg { format!("-{monomial}") } else { monomial };
        } else {
            let _ = write!(out, " {} {monomial}", if neg { '-' } else { '+' });
        }
    }
    if out.is_empty() { "0".into() } else { out }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(key: Option<&str>, v: &Value, indent: usize, out: &mut String) {
    let label = |out: &mut String| {
        if let Some(k) = key {
            let _ = write!(out, "{:indent$}{k}:", "");
        }
    };
    let inner = if key.is_some() { indent + 2 } else { indent };
    match v {
        Value::Object(map) => {
            if key.is_some() {
                label(out);
                out.push('\n');
            }
            for (k, x) in map {
                render(Some(k), x, inner, out);
            }
        }
        Value::Array(items) if key == Some("charpoly") => {
            label(out);
            let _ = writeln!(out, " {}", render_poly(items));
        }
        Value::Array(items) if key == Some("arrows") && items.iter().all(|a| a.as_array().is_some_and(|p| p.len() == 2)) => {
            label(out);
            out.push('\n');
            for a in items {
                if let [s, t] = a.as_array().map(Vec::as_slice).unwrap_or(&[]) {
                    let _ = writeln!(out, "{:inner$}{s} -> {t}", "");
                }
            }
        }
        Value::Array(items) => {
            if let Some(rows) = as_matrix(v) {
                label(out);
                out.push('\n');
                render_matrix(&rows, inner, out);
            } else if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                label(out);
                let parts: Vec<String> = items.iter().map(scalar).collect();
                let _ = writeln!(out, " [{}]", parts.join(", "));
            } else {
                label(out);
                out.push('\n');
                for (k, x) in items.iter().enumerate() {
                    render(Some(&format!("{}", k + 1)), x, inner, out);
                }
            }
        }
        _ => {
            label(out);
            let _ = writeln!(out, " {}", scalar(v));
        }
    }
}

fn json_into(v: &Value, indent: usize, out: &mut String) {
    let flat = |x: &Value| !x.is_object() && !x.is_array();
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                let _ = write!(out, "{:w$}{}: ", "", Value::String(key.clone()), w = indent + 2);
                json_into(x, indent + 2, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{:indent$}}}", "");
        }
        Value::Array(items) if !items.is_empty() && !items.iter().all(flat) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                let _ = write!(out, "{:w$}", "", w = indent + 2);
                json_into(x, indent + 2, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{:indent$}]", "");
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Indented JSON with arrays of scalars kept on one line, so matrices print
/// one row per line.
pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    json_into(v, 0, &mut out);
    out.push('\n');
    out
}

pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    render(None, v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn polynomials() {
        assert_eq!(render_poly(&[json!(1), json!(-2), json!(1)]), "1 - 2λ + λ^2");
        assert_eq!(render_poly(&[json!(-1), json!(1), json!(0), json!(0), json!(-1), json!(1)]), "-1 + λ - λ^4 + λ^5");
        assert_eq!(render_poly(&[json!(0)]), "0");
    }

    #[test]
    fn json_layout() {
        let v = json!({"b": [[1, -1], [0, 1]], "ok": true, "empty": [], "steps": [{"op": "swap", "i": 1, "j": 2}]});
        let text = to_json(&v);
        assert_eq!(
            text,
            "{\n  \"b\": [\n    [1, -1],\n    [0, 1]\n  ],\n  \"ok\": true,\n  \"empty\": [],\n  \"steps\": [\n    {\n      \"op\": \"swap\",\n      \"i\": 1,\n      \"j\": 2\n    }\n  ]\n}\n"
        );
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }

    #[test]
    fn documents() {
        let text = to_pretty(&json!({"n": 2, "tri_gram": [[1, -1], [0, 1]], "arrows": [[1, 2]], "charpoly": [1, 1, 1]}));
        assert_eq!(text, "n: 2\ntri_gram:\n  [  1  -1 ]\n  [  0   1 ]\narrows:\n  1 -> 2\ncharpoly: 1 + λ + λ^2\n");
    }
}
