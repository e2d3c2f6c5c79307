//! Rendering of certificate ledgers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use conic_core::ledger::{read_ledger, LedgerContents};
use conic_core::linsys::{Certificate, Verdict};
use serde_json::json;

use crate::Format;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub certified: usize,
    pub inconclusive: usize,
    pub refuted: usize,
    pub bad_lines: usize,
}

/// Renders the ledger at `path`. Malformed lines are listed and skipped.
pub fn render_report(path: &Path, format: Format) -> Result<(String, Tally)> {
    let contents = read_ledger(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(render(&contents, format))
}

fn render(contents: &LedgerContents, format: Format) -> (String, Tally) {
    let mut tally = Tally { bad_lines: contents.bad_lines.len(), ..Tally::default() };
    let mut groups: BTreeMap<String, Vec<&Certificate>> = BTreeMap::new();
    for c in &contents.entries {
        match c.verdict {
            Verdict::Certified => tally.certified += 1,
            Verdict::Inconclusive => tally.inconclusive += 1,
            Verdict::RefutedExpectation => tally.refuted += 1,
        }
        groups.entry(c.claim.to_string()).or_default().push(c);
    }

    let mut s = String::new();
    match format {
        Format::Json => {
            let bad: Vec<_> = contents.bad_lines.iter().map(|b| json!({"line": b.line_no, "error": b.message})).collect();
            let v = json!({
                "certified": tally.certified,
                "inconclusive": tally.inconclusive,
                "refuted_expectation": tally.refuted,
                "entries": contents.entries,
                "bad_lines": bad,
            });
            writeln!(s, "{v}").unwrap();
        }
        Format::Text => {
            writeln!(
                s,
                "{:<18} {:>3} {:>3} {:>3} {:>4} {:>5} {:>5} {:>6}  {:<20} {:>10}",
                "claim", "n", "e", "m", "d", "rows", "cols", "kernel", "verdict", "elapsed_ms"
            )
            .unwrap();
            for (claim, certs) in &groups {
                for c in certs {
                    writeln!(
                        s,
                        "{:<18} {:>3} {:>3} {:>3} {:>4} {:>5} {:>5} {:>6}  {:<20} {:>10}",
                        claim,
                        c.n,
                        c.e,
                        c.m,
                        c.d,
                        c.rows,
                        c.cols,
                        c.kernel_dim,
                        c.verdict.to_string(),
                        c.elapsed_ms
                    )
                    .unwrap();
                }
            }
            for b in &contents.bad_lines {
                writeln!(s, "skipped line {}: {}", b.line_no, b.message).unwrap();
            }
            if !contents.entries.is_empty() || !contents.bad_lines.is_empty() {
                let mut summary = format!("summary: {} certified / {} inconclusive", tally.certified, tally.inconclusive);
                if tally.refuted > 0 {
                    write!(summary, " / {} refuted", tally.refuted).unwrap();
                }
                writeln!(s, "{summary}").unwrap();
            }
        }
    }
    (s, tally)
}
