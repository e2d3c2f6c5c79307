//! JSONL certificate ledger: one standalone JSON object per line.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::linsys::Certificate;

/// Appends certificates in order through a single buffered writer.
pub fn append_certificates(path: &Path, certs: &[Certificate]) -> io::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = io::BufWriter::new(file);
    for c in certs {
        writeln!(w, "{}", c.to_json_line())?;
    }
    w.flush()
}

/// A line that could not be parsed as a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadLine {
    pub line_no: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LedgerContents {
    pub entries: Vec<Certificate>,
    pub bad_lines: Vec<BadLine>,
}

/// Parses ledger text; blank lines are ignored, malformed ones collected.
pub fn parse_ledger(text: &str) -> LedgerContents {
    let mut out = LedgerContents::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Certificate>(line) {
            Ok(c) => out.entries.push(c),
            Err(e) => out.bad_lines.push(BadLine { line_no: i + 1, message: e.to_string() }),
        }
    }
    out
}

pub fn read_ledger(path: &Path) -> io::Result<LedgerContents> {
    let mut text = String::new();
    for line in BufReader::new(File::open(path)?).lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    Ok(parse_ledger(&text))
}
