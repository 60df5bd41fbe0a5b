//! Deterministic JSON layout: objects and arrays break across lines unless
//! their compact form is short, which keeps data files and reports readable
//! and byte-stable.

use serde_json::Value;

const INLINE_WIDTH: usize = 100;

pub fn write_value(out: &mut String, v: &Value, indent: usize) {
    let compact = serde_json::to_string(v).expect("values always serialise");
    let scalar = !matches!(v, Value::Array(_) | Value::Object(_));
    if scalar || compact.len() + indent <= INLINE_WIDTH {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("string key"));
                out.push_str(": ");
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

pub fn to_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips() {
        let v = json!({"a": [1, 2, {"n": 8, "terms": [[1, "-1"], [3, "1"]]}], "b": "x".repeat(120)});
        let s = to_string(&v);
        assert_eq!(serde_json::from_str::<Value>(&s).unwrap(), v);
        assert!(s.contains("\n  \"b\""));
    }
}
