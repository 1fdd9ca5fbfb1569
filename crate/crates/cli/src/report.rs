//! Output documents and their three renderings.

use std::fmt::Write as _;

use anglesum::relations::RelationReport;
use anglesum::Scalar;
use serde_json::{json, Map, Value};

use crate::RunConfig;

pub const SCHEMA: u32 = 1;

/// Exact values print as rationals, floats as numbers.
pub fn scalar(x: &Scalar) -> Value {
    match x {
        Scalar::Exact(_) => {
            let s = x.to_string();
            match s.parse::<i64>() {
                Ok(n) => json!(n),
                Err(_) => json!(s),
            }
        }
        Scalar::Float(f) => float(*f),
    }
}

pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| json!(x.to_string()), Value::Number)
}

#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub summary: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), v.into());
        self
    }

    pub fn row(&mut self, cells: Vec<(&str, Value)>) {
        self.rows.push(cells.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    pub fn relation(&mut self, r: &RelationReport, extra: Vec<(&str, Value)>) {
        let mut cells = extra;
        cells.extend([
            ("relation", json!(r.relation.to_string())),
            ("lhs", scalar(&r.lhs)),
            ("rhs", scalar(&r.rhs)),
            ("residual", scalar(&r.residual)),
            ("tolerance", float(r.tolerance)),
            ("pass", json!(r.pass)),
        ]);
        self.row(cells);
        self.fail_unless(r.pass);
    }

    /// Records a check; the report passes only if every check does.
    pub fn fail_unless(&mut self, ok: bool) {
        self.pass = Some(self.pass.unwrap_or(true) && ok);
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Json => self.json(cfg),
            Format::Csv => self.csv(),
            Format::Table => self.table(cfg),
        }
    }

    fn json(&self, cfg: &RunConfig) -> String {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(self.command));
        doc.insert("config".into(), cfg.to_json());
        doc.insert("summary".into(), Value::Object(self.summary.clone()));
        doc.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        if let Some(p) = self.pass {
            doc.insert("pass".into(), json!(p));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    }

    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for r in &self.rows {
            for k in r.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
        cols
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in &self.summary {
                w.write_record([k.as_str(), &cell(v)]).expect("in-memory write");
            }
        } else {
            let cols = self.columns();
            w.write_record(&cols).expect("in-memory write");
            for r in &self.rows {
                let rec: Vec<String> = cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect();
                w.write_record(&rec).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn table(&self, cfg: &RunConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# anglesum {} | schema {SCHEMA} | seed {} | samples {} | tol {:e}",
            self.command, cfg.seed, cfg.samples, cfg.tol
        );
        let width = self.summary.keys().map(String::len).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k:>width$}  {}", cell(v));
        }
        if !self.rows.is_empty() {
            if !self.summary.is_empty() {
                out.push('\n');
            }
            let cols = self.columns();
            let grid: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| grid.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "{}", line(&cols));
            for r in &grid {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        if let Some(p) = self.pass {
            let _ = writeln!(out, "{}", if p { "PASS" } else { "FAIL" });
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        }
    }
}
