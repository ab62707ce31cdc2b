//! CSV, JSON and b-file serialization of tables and suite results.
//!
//! Values are always written as decimal strings so that consumers with
//! limited numeric precision never round them.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{IdentityReport, Side, SuiteResult};
use crate::table::{Fix, SequenceTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Csv,
    Json,
    /// One `index value` pair per line; single-parameter sequences only.
    Bfile,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Bfile => "bfile",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "bfile" | "b-file" => Ok(OutputFormat::Bfile),
            _ => Err(Error::Domain(format!("unknown format `{s}`"))),
        }
    }
}

fn io_err(e: impl fmt::Display) -> Error {
    Error::Output(e.to_string())
}

#[derive(Serialize)]
struct TableRecord {
    n: u32,
    r: u32,
    value: String,
}

pub fn write_table<T: fmt::Display, W: Write>(
    table: &SequenceTable<T>,
    format: OutputFormat,
    mut out: W,
) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for e in &table.entries {
                w.serialize(TableRecord {
                    n: e.n,
                    r: e.r,
                    value: e.value.to_string(),
                })
                .map_err(io_err)?;
            }
            if table.entries.is_empty() {
                w.write_record(["n", "r", "value"]).map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        OutputFormat::Json => {
            let records: Vec<_> = table
                .entries
                .iter()
                .map(|e| TableRecord {
                    n: e.n,
                    r: e.r,
                    value: e.value.to_string(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &records).map_err(io_err)?;
            writeln!(out).map_err(io_err)
        }
        OutputFormat::Bfile => {
            let fix = table
                .fix
                .ok_or_else(|| Error::Domain("b-file output needs a fixed n or r".into()))?;
            for e in &table.entries {
                let index = match fix {
                    Fix::N(_) => e.r,
                    Fix::R(_) => e.n,
                };
                writeln!(out, "{index} {}", e.value).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum SideRecord {
    Value(String),
    Terms(Vec<String>),
}

impl<T: fmt::Display> From<&Side<T>> for SideRecord {
    fn from(side: &Side<T>) -> Self {
        match side {
            Side::Value(v) => SideRecord::Value(v.to_string()),
            Side::Terms(ts) => SideRecord::Terms(ts.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Serialize)]
struct ReportRecord {
    id: &'static str,
    n: u32,
    r: u32,
    lhs: Option<SideRecord>,
    rhs: Option<SideRecord>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl<T: fmt::Display> From<&IdentityReport<T>> for ReportRecord {
    fn from(r: &IdentityReport<T>) -> Self {
        ReportRecord {
            id: r.id.tag(),
            n: r.n,
            r: r.r,
            lhs: r.lhs.as_ref().map(SideRecord::from),
            rhs: r.rhs.as_ref().map(SideRecord::from),
            pass: r.pass,
            error: r.error.clone(),
        }
    }
}

#[derive(Serialize)]
struct SuiteRecord {
    checked: usize,
    failed: usize,
    skipped: usize,
    elapsed_ms: u128,
    reports: Vec<ReportRecord>,
}

fn side_text<T: fmt::Display>(side: &Option<Side<T>>) -> String {
    side.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Writes a suite result, failing reports first.
pub fn write_suite<T: fmt::Display, W: Write>(
    result: &SuiteResult<T>,
    format: OutputFormat,
    mut out: W,
) -> Result<()> {
    let ordered = result.failures_first();
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "n", "r", "lhs", "rhs", "pass", "error"])
                .map_err(io_err)?;
            for rep in ordered {
                w.write_record([
                    rep.id.tag().to_string(),
                    rep.n.to_string(),
                    rep.r.to_string(),
                    side_text(&rep.lhs),
                    side_text(&rep.rhs),
                    rep.pass.to_string(),
                    rep.error.clone().unwrap_or_default(),
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        OutputFormat::Json => {
            let record = SuiteRecord {
                checked: result.checked,
                failed: result.failed,
                skipped: result.skipped,
                elapsed_ms: result.elapsed_ms,
                reports: ordered.into_iter().map(ReportRecord::from).collect(),
            };
            serde_json::to_writer_pretty(&mut out, &record).map_err(io_err)?;
            writeln!(out).map_err(io_err)
        }
        OutputFormat::Bfile => Err(Error::Domain(
            "b-file output applies only to single-parameter sequences".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::Gessel;
    use crate::harness::{run_suite, IdentityId, SuiteConfig};
    use crate::table::{build_table, Kind, Method};
    use crate::Nat;

    fn render<F: FnOnce(&mut Vec<u8>) -> Result<()>>(f: F) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_table() {
        let g = Gessel::<Nat>::new();
        let t = build_table(&g, Kind::P, Method::Closed, 1, 2, None).unwrap();
        let text = render(|b| write_table(&t, OutputFormat::Csv, b));
        assert_eq!(text, "n,r,value\n0,1,1\n0,2,3\n1,1,1\n1,2,4\n");
    }

    #[test]
    fn bfile_table() {
        let g = Gessel::<Nat>::new();
        let t = build_table(&g, Kind::P, Method::Closed, 0, 3, Some(Fix::N(0))).unwrap();
        let text = render(|b| write_table(&t, OutputFormat::Bfile, b));
        assert_eq!(text, "1 1\n2 3\n3 10\n");
        let t = build_table(&g, Kind::P, Method::Closed, 3, 0, Some(Fix::R(1))).unwrap();
        let text = render(|b| write_table(&t, OutputFormat::Bfile, b));
        assert_eq!(text, "0 1\n1 1\n2 2\n3 5\n");
    }

    #[test]
    fn bfile_needs_a_fixed_axis() {
        let g = Gessel::<Nat>::new();
        let t = build_table(&g, Kind::P, Method::Closed, 1, 2, None).unwrap();
        assert!(matches!(
            write_table(&t, OutputFormat::Bfile, Vec::new()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn json_table_uses_strings() {
        let g = Gessel::<Nat>::new();
        let t = build_table(&g, Kind::Q, Method::Closed, 0, 1, None).unwrap();
        let text = render(|b| write_table(&t, OutputFormat::Json, b));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v, serde_json::json!([{"n": 0, "r": 1, "value": "1"}]));
    }

    #[test]
    fn suite_csv_and_json() {
        let g = Gessel::<Nat>::new();
        let res = run_suite(
            &g,
            &[IdentityId::Eq12, IdentityId::LastTouchTerms],
            1,
            2,
            &SuiteConfig::default(),
        );
        let csv = render(|b| write_suite(&res, OutputFormat::Csv, b));
        assert!(csv.starts_with("id,n,r,lhs,rhs,pass,error\nEQ12,0,1,1,1,true,\n"));
        assert!(csv.contains("LAST_TOUCH_TERMS,1,2,2;2,2;2,true,"));
        let json = render(|b| write_suite(&res, OutputFormat::Json, b));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checked"], 8);
        assert_eq!(v["failed"], 0);
        assert_eq!(v["reports"][7]["lhs"], serde_json::json!(["2", "2"]));
        assert!(write_suite(&res, OutputFormat::Bfile, Vec::new()).is_err());
    }
}
