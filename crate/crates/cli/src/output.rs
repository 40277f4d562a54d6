//! Report rendering: one command produces one `CommandOutput`, emitted as
//! JSON (one document per run, versioned schema), CSV (RFC quoting), or an
//! aligned text table. Identical configs yield byte-identical output.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "embedsharp/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// The uniform result of a subcommand: scalar fields plus an optional
/// table, and the overall pass flag that drives the exit code.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub command: &'static str,
    pub scalars: Vec<(&'static str, Value)>,
    pub table: Option<Table>,
    pub pass: bool,
}

impl CommandOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(self.command));
        for (k, v) in &self.scalars {
            obj.insert((*k).into(), v.clone());
        }
        if let Some(t) = &self.table {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (h, cell) in t.headers.iter().zip(row) {
                        m.insert((*h).into(), json!(cell));
                    }
                    Value::Object(m)
                })
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        obj.insert("pass".into(), json!(self.pass));
        Value::Object(obj).to_string()
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.table {
            Some(t) => {
                out.push_str(&csv_line(t.headers.iter().map(|h| h.to_string())));
                for row in &t.rows {
                    out.push_str(&csv_line(row.iter().cloned()));
                }
            }
            None => {
                out.push_str(&csv_line(self.scalars.iter().map(|(k, _)| k.to_string())));
                out.push_str(&csv_line(self.scalars.iter().map(|(_, v)| plain(v))));
            }
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.scalars {
            out.push_str(&format!("{k}: {}\n", plain(v)));
        }
        if let Some(t) = &self.table {
            out.push_str(&render_aligned(t));
        }
        out.push_str(&format!("pass: {}\n", self.pass));
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>, widths: &[usize]| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(&format!("{cell:<w$}"));
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(t.headers.iter().map(|h| h.to_string()).collect(), &widths));
    out.push('\n');
    for row in &t.rows {
        out.push_str(&line(row.clone(), &widths));
        out.push('\n');
    }
    out
}

/// RFC 4180 quoting: fields with commas, quotes, or newlines get quoted,
/// inner quotes doubled.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: impl Iterator<Item = String>) -> String {
    let joined: Vec<String> = cells.map(|c| csv_field(&c)).collect();
    format!("{}\r\n", joined.join(","))
}
