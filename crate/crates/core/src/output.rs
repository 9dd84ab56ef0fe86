//! Output records and table formats for the command-line front end.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::ExactValue;
use crate::group::GroupType;

/// One evaluated value: `group` is the canonical factor string, `value` the exact
/// decimal (or `p/q`) rendering of the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub group: String,
    pub function: String,
    pub value: String,
}

impl OutputRecord {
    pub fn new(group: &GroupType, function: &str, value: &ExactValue) -> Self {
        OutputRecord {
            group: group.to_string(),
            function: function.to_string(),
            value: value.to_string(),
        }
    }

    pub fn parsed_value(&self) -> Result<ExactValue> {
        ExactValue::from_str(&self.value)
            .map_err(|_| Error::Parse(format!("`{}` is not an exact rational", self.value)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
    Aligned,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            "aligned" => Ok(Format::Aligned),
            other => Err(Error::Parse(format!(
                "unknown format `{other}` (expected csv, json-lines or aligned)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::JsonLines => "json-lines",
            Format::Aligned => "aligned",
        })
    }
}

/// Writes records in the requested format. CSV and aligned output carry a header row.
pub fn write_records<W: Write>(out: W, format: Format, records: &[OutputRecord]) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record(["group", "function", "value"])?;
            }
            for r in records {
                w.serialize(r)?;
            }
            w.flush()
        }
        Format::JsonLines => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Format::Aligned => {
            let mut out = out;
            let width = |f: fn(&OutputRecord) -> &str, title: &str| {
                records.iter().map(|r| f(r).len()).chain([title.len()]).max().unwrap_or(0)
            };
            let wg = width(|r| &r.group, "group");
            let wf = width(|r| &r.function, "function");
            writeln!(out, "{:<wg$}  {:<wf$}  value", "group", "function")?;
            for r in records {
                writeln!(out, "{:<wg$}  {:<wf$}  {}", r.group, r.function, r.value)?;
            }
            out.flush()
        }
    }
}
