//! Sample-file round trips.
//!
//! One header row naming the columns, then one record per line, LF
//! terminated. Values are written with 17 significant digits so a
//! write/read cycle reproduces every `f64` bit for bit.

use std::fs;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sampler::{Records, SampleBatch};

/// A parsed sample file: the header row plus the records under it.
#[derive(Debug, Clone)]
pub struct ParsedSamples {
    pub header: String,
    pub records: Records,
}

impl ParsedSamples {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

fn format_value(value: f64) -> String {
    format!("{value:.16e}")
}

/// Render a batch as CSV text.
pub fn render_samples(batch: &SampleBatch) -> String {
    let mut out = String::new();
    out.push_str(batch.observable.column_header());
    out.push('\n');
    match &batch.records {
        Records::Scalars(values) => {
            for v in values {
                let _ = writeln!(out, "{}", format_value(*v));
            }
        }
        Records::Pairs(pairs) => {
            for (a, b) in pairs {
                let _ = writeln!(out, "{},{}", format_value(*a), format_value(*b));
            }
        }
    }
    out
}

/// Write a batch to `path` as CSV.
pub fn write_samples(path: &Path, batch: &SampleBatch) -> Result<()> {
    fs::write(path, render_samples(batch))?;
    Ok(())
}

/// Read a sample CSV. The header decides the record shape: one column
/// yields scalars, two yield pairs. CRLF line endings are tolerated.
pub fn read_samples(path: &Path) -> Result<ParsedSamples> {
    let text = fs::read_to_string(path)?;
    parse_samples(&text, path)
}

fn parse_samples(text: &str, path: &Path) -> Result<ParsedSamples> {
    let mut lines = text.split('\n').enumerate();
    let (_, header_line) = lines.next().ok_or(Error::EmptyInput)?;
    let header = header_line.trim_end_matches('\r').trim();
    if header.is_empty() {
        return Err(Error::BadHeader {
            path: path.to_path_buf(),
            found: String::from("(empty line)"),
        });
    }
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    // A header row must name columns; a line of numbers means the file
    // skipped it.
    if columns.iter().any(|c| c.parse::<f64>().is_ok()) || columns.len() > 2 {
        return Err(Error::BadHeader {
            path: path.to_path_buf(),
            found: header.to_string(),
        });
    }

    let parse = |field: &str, line: usize| -> Result<f64> {
        let value: f64 = field.trim().parse().map_err(|_| Error::ParseRecord {
            path: path.to_path_buf(),
            line,
            reason: format!("not a number: {field:?}"),
        })?;
        if !value.is_finite() {
            return Err(Error::ParseRecord {
                path: path.to_path_buf(),
                line,
                reason: format!("non-finite value: {field}"),
            });
        }
        Ok(value)
    };

    let records = if columns.len() == 1 {
        let mut values = Vec::new();
        for (idx, raw) in lines {
            let line = raw.trim_end_matches('\r').trim();
            if line.is_empty() {
                continue;
            }
            if line.contains(',') {
                return Err(Error::ParseRecord {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    reason: String::from("expected one column"),
                });
            }
            values.push(parse(line, idx + 1)?);
        }
        Records::Scalars(values)
    } else {
        let mut pairs = Vec::new();
        for (idx, raw) in lines {
            let line = raw.trim_end_matches('\r').trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let (a, b) = (fields.next(), fields.next());
            if b.is_none() || fields.next().is_some() {
                return Err(Error::ParseRecord {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    reason: String::from("expected two columns"),
                });
            }
            pairs.push((
                parse(a.unwrap(), idx + 1)?,
                parse(b.unwrap(), idx + 1)?,
            ));
        }
        Records::Pairs(pairs)
    };

    Ok(ParsedSamples {
        header: header.to_string(),
        records,
    })
}
