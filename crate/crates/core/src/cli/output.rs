use std::io::{self, Write};

use serde::Serialize;

use crate::wangsun::{SumKind, SumResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

/// Wire form of a [`SumResult`]. Rationals travel as strings.
#[derive(Debug, Serialize)]
pub struct ResultJson {
    pub kind: SumKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub root_exponent: u64,
    pub value: String,
    pub summand_count: u64,
    pub elapsed_ms: u64,
    pub beyond_paper: bool,
}

impl From<&SumResult> for ResultJson {
    fn from(r: &SumResult) -> Self {
        let (k, n) = match r.kind {
            SumKind::Classical => (None, Some(r.param)),
            _ => (Some(r.param), None),
        };
        Self {
            kind: r.kind,
            k,
            n,
            root_exponent: r.root_exponent,
            value: r.value.to_string(),
            summand_count: r.summand_count,
            elapsed_ms: r.elapsed.as_millis() as u64,
            beyond_paper: r.beyond_paper,
        }
    }
}

pub const CSV_HEADER: &str = "kind,k,n,root_exponent,value,summand_count,elapsed_ms,beyond_paper";

fn opt(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &ResultJson) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.kind,
        opt(r.k),
        opt(r.n),
        r.root_exponent,
        r.value,
        r.summand_count,
        r.elapsed_ms,
        r.beyond_paper
    )
}

pub fn write_result(out: &mut dyn Write, format: Format, r: &SumResult) -> io::Result<()> {
    let wire = ResultJson::from(r);
    match format {
        Format::Plain => writeln!(out, "{}", r.value),
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&wire).expect("serializable")
        ),
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            writeln!(out, "{}", csv_row(&wire))
        }
    }
}
