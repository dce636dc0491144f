//! Tables of results written as JSON, CSV or aligned plain text.
//!
//! Cells are JSON values so that the JSON form keeps integers and nulls
//! where a schema asks for them; big counts are always strings.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Rows as JSON objects with keys in column order.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes the table; an empty table produces its header only (`[]` in
/// JSON).
pub fn emit_table(table: &Table, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &table.to_json())?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&table.columns)?;
            for r in &table.rows {
                w.write_record(r.iter().map(cell_text))?;
            }
            w.flush()
        }
        Format::Plain => {
            let text: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(cell_text).collect()).collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|c| text.iter().map(|r| r[c].len()).chain([table.columns[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&table.columns))?;
            for r in &text {
                writeln!(out, "{}", line(r))?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        emit_table(t, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(["class", "m", "n", "count"]);
        assert_eq!(render(&t, Format::Csv), "class,m,n,count\n");
        assert_eq!(render(&t, Format::Plain).trim_end(), "class  m  n  count");
        assert_eq!(render(&t, Format::Json).trim(), "[]");
    }

    #[test]
    fn json_keeps_column_order_and_types() {
        let mut t = Table::new(["class", "m", "n", "count"]);
        t.push(vec![json!("zigzag"), Value::Null, json!(12), json!("955999")]);
        let s = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(s, r#"[{"class":"zigzag","m":null,"n":12,"count":"955999"}]"#);
        assert_eq!(render(&t, Format::Csv), "class,m,n,count\nzigzag,,12,955999\n");
    }
}
