use serde_json::{json, Map, Value};
use vpv_core::exact::Interval;
use vpv_core::Float;

/// Decimal digits carried by a `bits`-bit mantissa.
pub fn significant_digits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize
}

/// Scientific decimal plus exact hexadecimal rendering of a float.
pub fn float(f: &Float) -> Value {
    json!({
        "decimal": normalized(f, 10, Some(significant_digits(f.prec()))),
        "hex": normalized(f, 16, None),
    })
}

/// `d.ddd` followed by `e<exp>` (decimal) or `@<exp>` (hex) when the exponent
/// is non-zero. The exponent counts digits of the given radix.
fn normalized(f: &Float, radix: i32, digits: Option<usize>) -> String {
    let (neg, s, exp) = f.to_sign_string_exp(radix, digits);
    let Some(exp) = exp else {
        return if f.is_zero() { "0".into() } else { format!("{}{}", if neg { "-" } else { "" }, s) };
    };
    let sign = if neg { "-" } else { "" };
    let (head, tail) = s.split_at(1);
    let mark = if radix == 10 { 'e' } else { '@' };
    match exp - 1 {
        0 => format!("{sign}{head}.{tail}"),
        e => format!("{sign}{head}.{tail}{mark}{e}"),
    }
}

pub fn interval(iv: &Interval) -> Value {
    json!({ "lo": float(iv.lo()), "hi": float(iv.hi()) })
}

/// Plain-text rendering of a results payload: one `key: value` line per
/// scalar, nested objects indented, arrays of rows one per line.
pub fn human(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn is_float(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("decimal") && m.contains_key("hex")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if is_float(m) => Some(format!(
            "{} [{}]",
            m["decimal"].as_str().unwrap_or_default(),
            m["hex"].as_str().unwrap_or_default()
        )),
        _ => None,
    }
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, v, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for item in items {
                match item {
                    Value::Object(m) if m.values().all(|v| scalar(v).is_some()) => {
                        let row: Vec<String> = m
                            .iter()
                            .map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_default()))
                            .collect();
                        out.push_str(&format!("{pad}- {}\n", row.join(" ")));
                    }
                    other => match scalar(other) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            write_value(out, other, depth + 1);
                        }
                    },
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
