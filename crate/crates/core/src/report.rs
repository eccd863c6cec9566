//! Command reports and their byte-stable emission as JSON, CSV or text.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

/// Output of one subcommand. `data` is the JSON payload, `table` the CSV view
/// and `text` the human-readable view. `witness` names the first violated
/// contract, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub data: Value,
    pub table: Table,
    pub text: Vec<String>,
    pub witness: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, data: impl Serialize) -> Self {
        Report {
            command: command.into(),
            passed: true,
            data: serde_json::to_value(data).expect("report data serializes"),
            table: Table::default(),
            text: Vec::new(),
            witness: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = table;
        self
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    /// Records a failed check; the first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.passed = false;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }
}

/// Serializes a report. JSON is the payload with object keys sorted; text
/// ends with a status line.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            debug_assert!(!contains_float(&report.data), "report data must not contain floats");
            let mut out = serde_json::to_vec(&canonical(&report.data)).expect("JSON value serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&report.table.header).expect("in-memory write");
            for row in &report.table.rows {
                writer.write_record(row).expect("in-memory write");
            }
            writer.into_inner().expect("in-memory flush")
        }
        Format::Text => {
            let mut out = String::new();
            for line in &report.text {
                out.push_str(line);
                out.push('\n');
            }
            match &report.witness {
                None if report.passed => out.push_str("status: pass\n"),
                None => out.push_str("status: FAIL\n"),
                Some(w) => out.push_str(&format!("status: FAIL ({w})\n")),
            }
            out.into_bytes()
        }
    }
}

/// Rebuilds every object with sorted keys, independently of how the JSON
/// map type orders its entries.
fn canonical(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(&String, &Value)> = map.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k.clone(), canonical(v))).collect())
        }
        Value::Array(items) => Value::Array(items.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

pub fn contains_float(value: &Value) -> bool {
    match value {
        Value::Number(n) => n.is_f64(),
        Value::Array(items) => items.iter().any(contains_float),
        Value::Object(map) => map.values().any(contains_float),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_table_is_header_only_csv() {
        let r = Report::new("betti", json!({})).with_table(Table::new(["d", "0"]));
        assert_eq!(emit(&r, Format::Csv), b"d,0\n");
    }

    #[test]
    fn csv_quotes_fields() {
        let mut t = Table::new(["lam", "value"]);
        t.push(["4,1,1", "x \"y\""]);
        let r = Report::new("x", json!(null)).with_table(t);
        assert_eq!(String::from_utf8(emit(&r, Format::Csv)).unwrap(), "lam,value\n\"4,1,1\",\"x \"\"y\"\"\"\n");
    }

    #[test]
    fn json_keys_sorted_and_stable() {
        let r = Report::new("x", json!({"zeta": 1, "alpha": {"b": 2, "a": [3, {"y": 0, "x": 1}]}}));
        let bytes = emit(&r, Format::Json);
        assert_eq!(
            String::from_utf8(bytes.clone()).unwrap(),
            "{\"alpha\":{\"a\":[3,{\"x\":1,\"y\":0}],\"b\":2},\"zeta\":1}\n"
        );
        assert_eq!(bytes, emit(&r.clone(), Format::Json));
        assert!(!contains_float(&r.data));
        assert!(contains_float(&json!({"a": [1.5]})));
    }

    #[test]
    fn text_status_line() {
        let mut r = Report::new("x", json!(null));
        r.line("hello");
        assert_eq!(emit(&r, Format::Text), b"hello\nstatus: pass\n");
        r.fail("first");
        r.fail("second");
        assert_eq!(emit(&r, Format::Text), b"hello\nstatus: FAIL (first)\n");
    }
}
