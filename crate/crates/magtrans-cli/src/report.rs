//! Report model and renderers.
//!
//! A report is a deterministic list of records; every record carries the
//! exact computed values (rational strings), not just a verdict.  Rendering
//! never consults clocks, threads, or hash order, so a fixed config yields
//! byte-identical output.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    /// Short machine-friendly identity name.
    pub check: String,
    /// Human-readable statement of the identity the record verifies.
    pub anchor: String,
    /// Exact inputs (rational strings, dimensions, seeds).
    pub inputs: BTreeMap<String, String>,
    /// Exact computed values.
    pub values: BTreeMap<String, String>,
    pub verdict: bool,
}

impl Record {
    pub fn new(check: &str, anchor: &str) -> Self {
        Record {
            check: check.to_string(),
            anchor: anchor.to_string(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            verdict: false,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(mut self, pass: bool) -> Self {
        self.verdict = pass;
        self
    }
}

/// One row of the numeric loop table (the only CSV-renderable payload).
#[derive(Debug, Clone, Serialize)]
pub struct LoopRow {
    pub kind: String,
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
    pub aux1: String,
    pub aux2: String,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub records: Vec<Record>,
    /// Present only for the `loops` subcommand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<LoopRow>>,
}

impl Report {
    pub fn new(command: &str, seed: u64, samples: usize) -> Self {
        Report {
            command: command.to_string(),
            seed,
            samples,
            records: Vec::new(),
            table: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict)
            && self
                .table
                .as_ref()
                .map_or(true, |t| t.iter().all(|r| r.verdict))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            other => bail!("unknown format {other:?}; expected json, table, or csv"),
        }
    }
}

fn kv(map: &BTreeMap<String, String>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "command: {}  (seed {}, samples {})\n",
                report.command, report.seed, report.samples
            ));
            for r in &report.records {
                out.push_str(&format!(
                    "[{}] {}\n    {}\n    inputs: {}\n    values: {}\n",
                    if r.verdict { "pass" } else { "FAIL" },
                    r.check,
                    r.anchor,
                    kv(&r.inputs),
                    kv(&r.values),
                ));
            }
            if let Some(table) = &report.table {
                out.push_str("    kind,index,lhs,rhs,aux1,aux2,verdict\n");
                for row in table {
                    out.push_str(&format!(
                        "    {},{},{},{},{},{},{}\n",
                        row.kind,
                        row.index,
                        row.lhs,
                        row.rhs,
                        row.aux1,
                        row.aux2,
                        if row.verdict { "pass" } else { "FAIL" }
                    ));
                }
            }
            out.push_str(&format!(
                "overall: {}\n",
                if report.all_pass() { "pass" } else { "FAIL" }
            ));
            Ok(out)
        }
        Format::Csv => {
            let Some(table) = &report.table else {
                bail!(
                    "--format csv is only available for the tabular `loops` subcommand; \
                     use json or table"
                );
            };
            let mut out = String::from("kind,index,lhs,rhs,aux1,aux2,verdict\n");
            for row in table {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    row.kind,
                    row.index,
                    row.lhs,
                    row.rhs,
                    row.aux1,
                    row.aux2,
                    if row.verdict { "pass" } else { "fail" }
                ));
            }
            Ok(out)
        }
    }
}
