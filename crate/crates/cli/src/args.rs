//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conic_core::linsys::Claim;

#[derive(Debug, Parser)]
#[command(name = "conic", version, about = "Exact certificates for conic bundles and fat-point linear systems")]
pub struct Cli {
    /// Output format. `json` is byte-stable across runs with the same seed.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Prime modulus for all finite-field work.
    #[arg(long, global = true)]
    pub prime: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count global sections on a Hirzebruch surface or a split P^2-bundle.
    H0(H0Args),
    /// Certify a linear-system claim over a grid of (n, e, m).
    Certify(CertifyArgs),
    /// Build and inspect conic bundle specifications.
    #[command(subcommand)]
    Conic(ConicCommand),
    /// Summarize a certificate ledger.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["fe", "split"]))]
pub struct H0Args {
    /// Hirzebruch surface: `E A B` for the class a C0 + b F on F_e.
    #[arg(long)]
    pub fe: bool,
    /// Split bundle: `N A0,A1,A2 ALPHA BETA`.
    #[arg(long)]
    pub split: bool,
    #[arg(allow_negative_numbers = true, required = true)]
    pub values: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// empty-4n+1, at-most-one-4n, empty-4n or lower-n2.
    #[arg(value_parser = parse_claim)]
    pub claim: Claim,
    /// Range of n, e.g. `3..5`, `3..=5`, `4` or `3,5`.
    #[arg(long)]
    pub n: Option<String>,
    /// Range of e; defaults to every e <= n.
    #[arg(long)]
    pub e: Option<String>,
    /// Range of multiplicities.
    #[arg(long, default_value = "1..3")]
    pub m: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Extra point configurations to try before reporting inconclusive.
    #[arg(long, default_value_t = 3)]
    pub retries: usize,
    #[arg(long, env = "CONIC_LEDGER", default_value = "certificates.jsonl")]
    pub ledger: PathBuf,
    /// Write 0 for elapsed_ms so ledgers are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum ConicCommand {
    /// Generate a member of one of the split families.
    Kollar(KollarArgs),
    /// Degree and shape of the discriminant.
    Discriminant(SpecArg),
    /// Restrict a spec to a line in the base.
    Restrict(RestrictArgs),
    /// The quadric-cover witness divisor of a split spec.
    Witness(SpecArg),
    /// Test the discriminant for repeated roots on random lines.
    Squarefree(SquarefreeArgs),
}

#[derive(Debug, Args)]
pub struct KollarArgs {
    #[arg(long)]
    pub n: u32,
    /// `a,2,0`, `b,1,0` or `a0,n,0`.
    #[arg(long)]
    pub variant: String,
    /// The free weight of the chosen variant.
    #[arg(long, visible_alias = "b", visible_alias = "a0")]
    pub a: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the spec; without it the spec is only printed in json mode.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    pub spec: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LineKind {
    Random,
    Coord,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = LineKind::Random)]
    pub line: LineKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SquarefreeArgs {
    pub spec: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(env = "CONIC_LEDGER", default_value = "certificates.jsonl")]
    pub ledger: PathBuf,
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|e: conic_core::Error| e.to_string())
}

/// Parses `a..b` or `a..=b` (both inclusive), a single value, or a comma list.
pub fn parse_range(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("bad range {s:?}");
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let mut out: Vec<u32> = s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("3..=5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert_eq!(parse_range("5,3,5").unwrap(), vec![3, 5]);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
