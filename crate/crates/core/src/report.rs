//! Structured result records with two renderings: aligned text tables for
//! people and JSON lines for machines. Field order is preserved exactly as
//! written, and every formatter is deterministic, so machine output is
//! byte-identical across runs on the same input.

use num_complex::Complex64 as C64;
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rat};

/// One typed field value of a record.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Str(String),
    Int(i64),
    Rat(Rat),
    Float(f64),
    Complex(C64),
    Bool(bool),
    /// Structured data (arrays, nested objects) passed through verbatim.
    Json(Json),
}

impl From<&str> for ReportValue {
    fn from(v: &str) -> Self {
        ReportValue::Str(v.to_string())
    }
}

impl From<String> for ReportValue {
    fn from(v: String) -> Self {
        ReportValue::Str(v)
    }
}

impl From<i64> for ReportValue {
    fn from(v: i64) -> Self {
        ReportValue::Int(v)
    }
}

impl From<usize> for ReportValue {
    fn from(v: usize) -> Self {
        ReportValue::Int(v as i64)
    }
}

impl From<Rat> for ReportValue {
    fn from(v: Rat) -> Self {
        ReportValue::Rat(v)
    }
}

impl From<f64> for ReportValue {
    fn from(v: f64) -> Self {
        ReportValue::Float(v)
    }
}

impl From<C64> for ReportValue {
    fn from(v: C64) -> Self {
        ReportValue::Complex(v)
    }
}

impl From<bool> for ReportValue {
    fn from(v: bool) -> Self {
        ReportValue::Bool(v)
    }
}

impl ReportValue {
    /// Human-readable rendering used in tables.
    pub fn text(&self) -> String {
        match self {
            ReportValue::Str(s) => s.clone(),
            ReportValue::Int(v) => v.to_string(),
            ReportValue::Rat(r) => format_rational(r),
            ReportValue::Float(v) => format_float(*v),
            ReportValue::Complex(z) => format_complex(*z),
            ReportValue::Bool(b) => b.to_string(),
            ReportValue::Json(v) => v.to_string(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            ReportValue::Str(s) => Json::String(s.clone()),
            ReportValue::Int(v) => json!(v),
            ReportValue::Rat(r) => Json::String(format_rational(r)),
            ReportValue::Float(v) => float_json(*v),
            ReportValue::Complex(z) => {
                let mut obj = Map::new();
                obj.insert("re".to_string(), float_json(z.re));
                obj.insert("im".to_string(), float_json(z.im));
                Json::Object(obj)
            }
            ReportValue::Bool(b) => Json::Bool(*b),
            ReportValue::Json(v) => v.clone(),
        }
    }
}

impl From<Json> for ReportValue {
    fn from(v: Json) -> Self {
        ReportValue::Json(v)
    }
}

fn float_json(v: f64) -> Json {
    match serde_json::Number::from_f64(v) {
        Some(n) => Json::Number(n),
        None => Json::String(format_float(v)),
    }
}

fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        // The shortest representation that round-trips; deterministic.
        format!("{v}")
    }
}

fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format_float(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_float(z.re), format_float(-z.im))
    } else {
        format!("{}+{}i", format_float(z.re), format_float(z.im))
    }
}

/// An ordered list of named fields; the unit of reporting. One record
/// becomes one table row or one machine line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, ReportValue)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    /// Append a field, keeping insertion order.
    pub fn push(mut self, key: &str, value: impl Into<ReportValue>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&ReportValue> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }

    pub fn fields(&self) -> impl Iterator<Item = (&str, &ReportValue)> {
        self.fields.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Serialize as one JSON line with keys in insertion order.
    pub fn machine_line(&self) -> String {
        let mut obj = Map::new();
        for (key, value) in &self.fields {
            obj.insert(key.clone(), value.to_json());
        }
        Json::Object(obj).to_string()
    }
}

/// Parse machine output back into JSON values, one per nonempty line.
pub fn parse_machine(text: &str) -> Result<Vec<Json>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line)
                .map_err(|e| Error::parse(format!("bad machine line {line:?}: {e}")))
        })
        .collect()
}

/// Render records as an aligned text table. Columns are the union of all
/// field names in first-seen order; missing values render empty.
pub fn render_table(records: &[Record]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for record in records {
        for (key, _) in record.fields() {
            if !columns.iter().any(|c| c == key) {
                columns.push(key.to_string());
            }
        }
    }
    render_table_with_columns(&columns, records)
}

/// Render a table with a fixed column set, so an empty record list still
/// produces the header.
pub fn render_table_with_columns(columns: &[String], records: &[Record]) -> String {
    if columns.is_empty() {
        return String::new();
    }

    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|record| {
            columns
                .iter()
                .map(|c| record.get(c).map(|v| v.text()).unwrap_or_default())
                .collect()
        })
        .collect();

    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain(std::iter::once(c.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = String::new();
    let emit_row = |out: &mut String, cells: &[String]| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{:<width$}", cell, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    emit_row(&mut out, &columns.to_vec());
    let dashes: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    emit_row(&mut out, &dashes);
    for row in &rows {
        emit_row(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn machine_line_preserves_field_order() {
        let record = Record::new()
            .push("name", "line")
            .push("nu", rat(-3, 4))
            .push("dim", 2usize)
            .push("value", C64::new(0.5, -1.25))
            .push("pass", true);
        assert_eq!(
            record.machine_line(),
            r#"{"name":"line","nu":"-3/4","dim":2,"value":{"re":0.5,"im":-1.25},"pass":true}"#
        );
    }

    #[test]
    fn machine_lines_parse_back() {
        let a = Record::new().push("k", 1i64).push("x", 0.1f64);
        let b = Record::new().push("k", 2i64).push("x", f64::NAN);
        let text = format!("{}\n{}\n", a.machine_line(), b.machine_line());
        let parsed = parse_machine(&text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0]["x"], serde_json::json!(0.1));
        assert_eq!(parsed[1]["x"], serde_json::json!("nan"));
        assert!(parse_machine("{oops").is_err());
    }

    #[test]
    fn table_aligns_and_unions_columns() {
        let records = vec![
            Record::new().push("id", "alpha").push("n", 10i64),
            Record::new().push("id", "b").push("extra", 1.5f64),
        ];
        let table = render_table(&records);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("id     n"));
        assert!(lines[0].contains("extra"));
        assert!(lines[2].starts_with("alpha  10"));
        assert!(lines[3].starts_with("b"));
    }

    #[test]
    fn fixed_columns_give_header_only_table_when_empty() {
        let columns = vec!["nu".to_string(), "dim".to_string()];
        let table = render_table_with_columns(&columns, &[]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("nu"));
        assert!(lines[1].starts_with("--"));
        assert_eq!(render_table(&[]), "");
    }

    #[test]
    fn complex_and_float_text_forms() {
        assert_eq!(ReportValue::from(C64::new(1.0, -2.0)).text(), "1-2i");
        assert_eq!(ReportValue::from(C64::new(0.5, 0.0)).text(), "0.5");
        assert_eq!(ReportValue::from(0.1f64).text(), "0.1");
        assert_eq!(ReportValue::from(rat(7, 1)).text(), "7");
    }
}
