//! Deterministic report assembly: every float is clamped to nine
//! significant digits before serialization, JSON keys are emitted in
//! sorted order, and nothing time- or machine-dependent enters the body,
//! so identical inputs produce byte-identical reports.

use serde_json::{Map, Value};

pub const TOOL_NAME: &str = "droste";

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Scientific notation with nine significant digits, the fixed report
/// format for floating-point values.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        // Normalize the two floating-point zeros to one spelling.
        return "0.00000000e0".into();
    }
    format!("{x:.8e}")
}

/// The value that [`sig9`] prints: `x` rounded to nine significant digits.
pub fn round9(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.8e}").parse().expect("sig9 output parses")
}

/// JSON number carrying the nine-significant-digit value; non-finite
/// values become strings, since JSON has no spelling for them.
pub fn num9(x: f64) -> Value {
    if x.is_finite() {
        Value::from(round9(x))
    } else {
        Value::from(format!("{x}"))
    }
}

/// A report: command identity, the fully resolved configuration, and a
/// command-specific body. Rendering is deterministic; wall-clock timing
/// belongs on the diagnostic stream, never in here.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub body: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            config: Map::new(),
            body: Value::Null,
        }
    }

    pub fn config_value(&mut self, key: &str, value: Value) -> &mut Self {
        self.config.insert(key.into(), value);
        self
    }

    pub fn config_num(&mut self, key: &str, value: f64) -> &mut Self {
        self.config_value(key, num9(value))
    }

    pub fn config_str(&mut self, key: &str, value: &str) -> &mut Self {
        self.config_value(key, Value::from(value))
    }

    pub fn render_json(&self) -> String {
        let mut top = Map::new();
        top.insert("tool".into(), Value::from(TOOL_NAME));
        top.insert("version".into(), Value::from(tool_version()));
        top.insert("command".into(), Value::from(self.command.clone()));
        top.insert("config".into(), Value::Object(self.config.clone()));
        top.insert("report".into(), self.body.clone());
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Render a CSV table; floats go through [`sig9`], strings are quoted only
/// when they contain a delimiter.
pub fn render_csv(headers: &[&str], rows: &[Vec<Value>]) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sig9(x),
            _ => n.to_string(),
        },
        Value::String(s) => {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nine_significant_digits_and_zero_normalization() {
        assert_eq!(sig9(std::f64::consts::E), "2.71828183e0");
        assert_eq!(sig9(-0.0), "0.00000000e0");
        assert_eq!(sig9(1234.56789123), "1.23456789e3");
        assert_eq!(round9(9.876543214321), 9.87654321);
        assert_eq!(round9(-0.0).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn rendering_is_reproducible_and_sorted() {
        let mut r = Report::new("verify");
        r.config_num("mu", 1.0);
        r.config_str("chart", "hd");
        r.body = json!({ "max_residual": num9(3.0e-7), "points": 10 });
        let a = r.render_json();
        let b = r.render_json();
        assert_eq!(a, b);
        let chart_pos = a.find("\"chart\"").unwrap();
        let mu_pos = a.find("\"mu\"").unwrap();
        assert!(chart_pos < mu_pos, "keys are sorted");
        assert!(a.contains("\"tool\": \"droste\""));
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn csv_cells_get_the_fixed_float_format() {
        let rows = vec![
            vec![json!("hd"), json!(std::f64::consts::E), json!(3)],
            vec![json!("a,b"), json!(0.0), json!(false)],
        ];
        let csv = render_csv(&["chart", "value", "n"], &rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "chart,value,n");
        assert_eq!(lines[1], "hd,2.71828183e0,3");
        assert_eq!(lines[2], "\"a,b\",0.00000000e0,false");
    }
}
