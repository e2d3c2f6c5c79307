//! Implementation of the `conic` binary. Every command writes to a caller
//! supplied sink and returns the process exit code.

pub mod args;
mod report;

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use conic_core::conic::{ConicBundleSpec, Family, Line};
use conic_core::exactfield::PrimeField;
use conic_core::ledger::append_certificates;
use conic_core::linsys::{certify_claim, grid, CertifyOptions, Claim, GridPoint, Verdict};
use conic_core::seeds::rng_for;
use conic_core::toric::{hirzebruch_h0, BiClass, SplitBundleSpace};
use serde_json::json;

pub use args::{parse_range, Cli, Format};
use args::{CertifyArgs, Command, ConicCommand, H0Args, KollarArgs, LineKind, RestrictArgs, SquarefreeArgs};
pub use report::{render_report, Tally};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;

const RESTRICT_TAG: u64 = 0x4c49_4e45;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let field = match cli.prime {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default(),
    };
    match &cli.command {
        Command::H0(a) => cmd_h0(a, cli.format, out),
        Command::Certify(a) => {
            let cfg = RunConfig::from_args(a, field)?;
            cmd_certify(&cfg, cli.format, out)
        }
        Command::Conic(c) => cmd_conic(c, field, cli.format, out),
        Command::Report(a) => {
            let (text, _) = render_report(&a.ledger, cli.format)?;
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_h0(a: &H0Args, format: Format, out: &mut dyn Write) -> Result<u8> {
    let count = if a.fe {
        let [e, x, y] = a.values.as_slice() else {
            bail!("--fe expects E A B");
        };
        hirzebruch_h0(e.parse()?, x.parse()?, y.parse()?).to_string()
    } else {
        let [n, weights, alpha, beta] = a.values.as_slice() else {
            bail!("--split expects N A0,A1,A2 ALPHA BETA");
        };
        let w: Vec<u32> = weights.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?;
        let w: [u32; 3] = w.try_into().map_err(|_| anyhow::anyhow!("expected three weights, got {weights:?}"))?;
        let space = SplitBundleSpace::new(n.parse()?, w)?;
        space.h0(BiClass::new(alpha.parse()?, beta.parse()?)).to_string()
    };
    match format {
        Format::Text => writeln!(out, "{count}")?,
        Format::Json => writeln!(out, "{{\"h0\":{count}}}")?,
    }
    Ok(EXIT_OK)
}

/// Validated settings for one `certify` run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub claim: Claim,
    pub points: Vec<GridPoint>,
    pub options: CertifyOptions,
    pub ledger: std::path::PathBuf,
}

impl RunConfig {
    pub fn from_args(a: &CertifyArgs, field: PrimeField) -> Result<Self> {
        let (n_default, e_default) = match a.claim {
            Claim::Empty4nPlus1 => ("3..4", None),
            Claim::AtMostOne4n => ("2..4", None),
            Claim::Empty4nNGe3 => ("3..5", None),
            Claim::LowerBoundN2 => ("2", Some("0")),
        };
        let ns = parse_range(a.n.as_deref().unwrap_or(n_default)).map_err(anyhow::Error::msg)?;
        let es = a.e.as_deref().or(e_default).map(parse_range).transpose().map_err(anyhow::Error::msg)?;
        let ms = parse_range(&a.m).map_err(anyhow::Error::msg)?;
        let points = grid(&ns, es.as_deref(), &ms);
        if points.is_empty() {
            bail!("the grid has no points with e <= n");
        }
        for p in &points {
            a.claim.check_point(*p)?;
        }
        let jobs = a.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        let max_m = *ms.iter().max().unwrap_or(&1) as u64;
        if field.modulus() <= 2 * max_m * max_m {
            bail!("prime {} must exceed 2 m^2 = {} for m = {max_m}", field.modulus(), 2 * max_m * max_m);
        }
        Ok(RunConfig {
            claim: a.claim,
            points,
            options: CertifyOptions { field, seed: a.seed, retries: a.retries, jobs, record_timing: !a.no_timing },
            ledger: a.ledger.clone(),
        })
    }
}

fn cmd_certify(cfg: &RunConfig, format: Format, out: &mut dyn Write) -> Result<u8> {
    let certs = certify_claim(cfg.claim, &cfg.points, &cfg.options)?;
    append_certificates(&cfg.ledger, &certs).with_context(|| format!("appending to {}", cfg.ledger.display()))?;
    let certified = certs.iter().filter(|c| c.verdict == Verdict::Certified).count();
    for c in &certs {
        match format {
            Format::Json => writeln!(out, "{}", c.to_json_line())?,
            Format::Text => writeln!(
                out,
                "{} n={} e={} m={} d={}: {}x{} kernel {} -> {}",
                c.claim, c.n, c.e, c.m, c.d, c.rows, c.cols, c.kernel_dim, c.verdict
            )?,
        }
    }
    if format == Format::Text {
        writeln!(out, "{certified}/{} certified, ledger {}", certs.len(), cfg.ledger.display())?;
    }
    Ok(if certified == certs.len() { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn load_spec(path: &Path) -> Result<ConicBundleSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ConicBundleSpec::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_spec(spec: &ConicBundleSpec, path: &Path) -> Result<()> {
    fs::write(path, spec.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}

fn parse_family(variant: &str, weight: u32) -> Result<Family> {
    let compact: String = variant.chars().filter(|c| !c.is_whitespace()).collect();
    Ok(match compact.as_str() {
        "a,2,0" => Family::A20 { a: weight },
        "b,1,0" => Family::B10 { b: weight },
        "a0,n,0" => Family::A0N0 { a0: weight },
        _ => bail!("unknown variant {variant:?}; expected a,2,0, b,1,0 or a0,n,0"),
    })
}

fn cmd_conic(c: &ConicCommand, field: PrimeField, format: Format, out: &mut dyn Write) -> Result<u8> {
    match c {
        ConicCommand::Kollar(a) => cmd_kollar(a, field, format, out),
        ConicCommand::Discriminant(a) => {
            let spec = load_spec(&a.spec)?;
            let disc = spec.discriminant();
            match format {
                Format::Text => {
                    writeln!(out, "discriminant degree {}", disc.degree)?;
                    writeln!(out, "terms {}", disc.poly.num_terms())?;
                    if disc.degenerate {
                        writeln!(out, "degenerate: the determinant vanishes identically")?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"degree": disc.degree, "terms": disc.poly.num_terms(), "degenerate": disc.degenerate})
                )?,
            }
            Ok(EXIT_OK)
        }
        ConicCommand::Restrict(a) => cmd_restrict(a, format, out),
        ConicCommand::Witness(a) => {
            let spec = load_spec(&a.spec)?;
            let w = spec.witness_divisor()?;
            let anti = spec.antican_effectivity();
            let witness = anti.witness.as_ref().map(|m| m.to_string());
            match format {
                Format::Text => {
                    writeln!(out, "branch degree {}", w.branch_degree)?;
                    writeln!(out, "-K_X = {}", anti.class)?;
                    if let Some(m) = &witness {
                        writeln!(out, "anticanonical section {m}")?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "branch_degree": w.branch_degree,
                        "anticanonical": [anti.class.alpha, anti.class.beta],
                        "effective": anti.effective,
                        "witness": witness,
                    })
                )?,
            }
            Ok(EXIT_OK)
        }
        ConicCommand::Squarefree(a) => cmd_squarefree(a, format, out),
    }
}

fn cmd_kollar(a: &KollarArgs, field: PrimeField, format: Format, out: &mut dyn Write) -> Result<u8> {
    let family = parse_family(&a.variant, a.a)?;
    let spec = ConicBundleSpec::family(a.n, family, field, a.seed)?;
    let degree = spec.discriminant().degree;
    if let Some(path) = &a.out {
        write_spec(&spec, path)?;
    }
    match format {
        Format::Text => {
            let w = spec.space().a();
            writeln!(out, "weights ({}, {}, {}) over P^{}", w[0], w[1], w[2], a.n - 1)?;
            writeln!(out, "discriminant degree {degree}")?;
            if spec.has_unavoidable_nonflat_locus() {
                writeln!(out, "warning: for n >= 7 the bundle has non-flat points")?;
            }
            if let Some(path) = &a.out {
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Format::Json => {
            let spec_json: serde_json::Value = serde_json::from_str(&spec.to_json())?;
            writeln!(out, "{}", json!({"discriminant_degree": degree, "spec": spec_json}))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_restrict(a: &RestrictArgs, format: Format, out: &mut dyn Write) -> Result<u8> {
    let spec = load_spec(&a.spec)?;
    let n = spec.space().n() as usize;
    let line = match a.line {
        LineKind::Coord => Line::coordinate(n),
        LineKind::Random => Line::random(spec.field(), n, &mut rng_for(a.seed, &[RESTRICT_TAG]))?,
    };
    let restricted = spec.restrict_to_line(&line)?;
    let direct = line.restrict(&spec.discriminant().poly)?;
    let disc = restricted.discriminant();
    let matches = disc.poly == direct;
    if let Some(path) = &a.out {
        write_spec(&restricted, path)?;
    }
    match format {
        Format::Text => {
            writeln!(out, "restricted discriminant degree {}", disc.degree)?;
            writeln!(out, "matches restricted original: {}", if matches { "yes" } else { "no" })?;
            if let Some(path) = &a.out {
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Format::Json => {
            let spec_json: serde_json::Value = serde_json::from_str(&restricted.to_json())?;
            writeln!(out, "{}", json!({"degree": disc.degree, "matches": matches, "spec": spec_json}))?;
        }
    }
    if !matches {
        bail!("restricted discriminant differs from the restriction of the discriminant");
    }
    Ok(EXIT_OK)
}

fn cmd_squarefree(a: &SquarefreeArgs, format: Format, out: &mut dyn Write) -> Result<u8> {
    let spec = load_spec(&a.spec)?;
    let report = spec.squarefree_check(a.seed, a.trials)?;
    let passed = report.trials.iter().filter(|&&t| t).count();
    let ok = report.consistent_with_reduced();
    match format {
        Format::Text => {
            writeln!(out, "{passed}/{} restrictions squarefree", report.trials.len())?;
            writeln!(out, "consistent with a reduced discriminant: {}", if ok { "yes" } else { "no" })?;
        }
        Format::Json => writeln!(out, "{}", json!({"trials": report.trials, "consistent_with_reduced": ok}))?,
    }
    Ok(if ok { EXIT_OK } else { EXIT_INCONCLUSIVE })
}
