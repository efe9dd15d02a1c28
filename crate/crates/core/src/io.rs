//! Matrix file formats.
//!
//! The canonical format is JSON: `{"n": 3, "entries": [["1", "1/3", 2], ...]}`.
//! Cells are either JSON numbers or strings. Integer and fraction strings
//! (`"3"`, `"8/5"`) and JSON integers are read as exact rationals; decimal
//! strings and non-integral numbers are read as floats. The CSV reader uses
//! the same cell convention, one matrix row per line; blank lines and lines
//! starting with `#` are ignored.
//!
//! Writers emit exact entries as strings and floats as JSON numbers, so exact
//! matrices round-trip losslessly.

use std::io::Read;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{validate, Entry, Pcm};

/// Parses a single cell: `"3"`, `"1/3"`, `"0.4759"`.
pub fn parse_entry(text: &str) -> std::result::Result<Entry, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty cell".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("malformed fraction {s:?}"))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("malformed fraction {s:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Entry::Exact(Rational64::new(num, den)));
    }
    if let Ok(v) = s.parse::<i64>() {
        return Ok(Entry::Exact(Rational64::from_integer(v)));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Entry::Float(x)),
        _ => Err(format!("not a number: {s:?}")),
    }
}

/// Formats an exact entry as `"p"` or `"p/q"`.
pub fn format_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDoc {
    n: usize,
    entries: Vec<Vec<Value>>,
}

fn value_to_entry(v: &Value) -> std::result::Result<Entry, String> {
    match v {
        Value::String(s) => parse_entry(s),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Entry::Exact(Rational64::from_integer(i)))
            } else {
                num.as_f64()
                    .filter(|x| x.is_finite())
                    .map(Entry::Float)
                    .ok_or_else(|| format!("unsupported number {num}"))
            }
        }
        other => Err(format!("expected number or string, found {other}")),
    }
}

/// Reads the raw grid from a JSON matrix document without validating it.
pub fn grid_from_json_str(text: &str) -> Result<Vec<Vec<Entry>>> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}", e.line()),
        message: e.to_string(),
    })?;
    if doc.entries.len() != doc.n {
        return Err(Error::Parse {
            location: "entries".into(),
            message: format!(
                "declared n = {} but found {} rows",
                doc.n,
                doc.entries.len()
            ),
        });
    }
    doc.entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| {
                    value_to_entry(cell).map_err(|message| Error::Parse {
                        location: format!("row {}, column {}", i + 1, j + 1),
                        message,
                    })
                })
                .collect()
        })
        .collect()
}

/// Parses and validates a JSON matrix document.
pub fn from_json_str(text: &str, tolerance: f64) -> Result<Pcm> {
    validate(&grid_from_json_str(text)?, tolerance)
}

/// Reads the raw grid from CSV text without validating it.
pub fn grid_from_csv<R: Read>(reader: R) -> Result<Vec<Vec<Entry>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut grid = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            location: e
                .position()
                .map(|p| format!("line {}", p.line()))
                .unwrap_or_else(|| "csv".into()),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                parse_entry(field).map_err(|message| Error::Parse {
                    location: format!("line {line}, column {}", j + 1),
                    message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        grid.push(row);
    }
    Ok(grid)
}

pub fn from_csv_str(text: &str, tolerance: f64) -> Result<Pcm> {
    validate(&grid_from_csv(text.as_bytes())?, tolerance)
}

fn entry_value(a: &Pcm, i: usize, j: usize) -> Value {
    match a.exact_entry(i, j) {
        Some(r) => Value::String(format_rational(r)),
        None => serde_json::Number::from_f64(a.get(i, j))
            .map(Value::Number)
            .unwrap_or(Value::Null),
    }
}

/// The canonical JSON value of a matrix.
pub fn to_json_value(a: &Pcm) -> Value {
    let n = a.n();
    let entries: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| entry_value(a, i, j)).collect()))
        .collect();
    serde_json::json!({ "n": n, "entries": entries })
}

pub fn to_json_string(a: &Pcm) -> String {
    to_json_value(a).to_string()
}

/// CSV text with the same cell convention as the reader.
pub fn to_csv_string(a: &Pcm) -> String {
    let n = a.n();
    let mut out = String::new();
    for i in 0..n {
        let cells: Vec<String> = (0..n)
            .map(|j| match a.exact_entry(i, j) {
                Some(r) => format_rational(r),
                None => format!("{:?}", a.get(i, j)),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Reads a matrix file, choosing the format by extension (`.csv` or JSON).
pub fn read_matrix_file(path: &std::path::Path, tolerance: f64) -> Result<Pcm> {
    let text = std::fs::read_to_string(path)?;
    let is_csv = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        from_csv_str(&text, tolerance)
    } else {
        from_json_str(&text, tolerance)
    }
}
