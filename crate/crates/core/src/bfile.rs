//! OEIS b-file reading and writing.
//!
//! A b-file is plain text: optional `#` comment lines, then data lines
//! `n value` separated by a single space, indices strictly increasing.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BFileRecord {
    pub index: i64,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BFileError {
    #[error("line {line}: expected \"index value\", found {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: index {index} does not increase")]
    NotIncreasing { line: usize, index: i64 },
}

/// Parses b-file text. Blank lines are skipped.
pub fn parse(text: &str) -> Result<Vec<BFileRecord>, BFileError> {
    let mut out: Vec<BFileRecord> = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let malformed = || BFileError::Malformed {
            line,
            content: raw.to_string(),
        };
        let (idx, val) = raw.split_once(' ').ok_or_else(malformed)?;
        let index: i64 = idx.parse().map_err(|_| malformed())?;
        let value: i64 = val.parse().map_err(|_| malformed())?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(BFileError::NotIncreasing { line, index });
            }
        }
        out.push(BFileRecord { index, value });
    }
    Ok(out)
}

pub fn write<W: Write>(mut out: W, comments: &[&str], records: &[BFileRecord]) -> io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    for r in records {
        writeln!(out, "{} {}", r.index, r.value)?;
    }
    Ok(())
}
