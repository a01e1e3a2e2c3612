//! Row tables rendered as CSV or as `{meta, rows}` JSON with identical values.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    U(u64),
    I(i64),
    B(bool),
    S(String),
    List(Vec<u64>),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::U(v) => v.to_string(),
            Cell::I(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(s) => csv_escape(s),
            Cell::List(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::U(v) => json!(v),
            Cell::I(v) => json!(v),
            Cell::B(v) => json!(v),
            Cell::S(s) => json!(s),
            Cell::List(v) => json!(v),
            Cell::Null => Value::Null,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::U(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::I(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

impl From<Option<u64>> for Cell {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Cell::Null, Cell::U)
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub eps: Option<String>,
    pub range: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub meta: Meta,
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(meta: Meta, header: &'static [&'static str]) -> Self {
        Self {
            meta,
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| ((*k).to_owned(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "meta": {
                "command": self.meta.command,
                "eps": self.meta.eps,
                "range": self.meta.range,
                "version": env!("CARGO_PKG_VERSION"),
            },
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values always serialize");
        s.push('\n');
        s
    }
}
