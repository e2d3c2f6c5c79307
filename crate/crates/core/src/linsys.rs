//! Fat-point interpolation on Hirzebruch surfaces.
//!
//! Sections of `a C0 + b F` on `F_e` are Cox monomials
//! `x0^u0 x1^u1 y0^v0 y1^v1` with `v0 + v1 = a` and `u0 + u1 + e v1 = b`.
//! In the affine chart `x0 = y0 = 1` (coordinates `s = x1`, `t = y1`) such a
//! monomial is `s^u1 t^v1`; the chart misses `C0 = {y0 = 0}` and the fiber
//! `{x0 = 0}`, so a point sampled there is automatically off `C0`.
//!
//! Multiplicity `m` at a point `(s0, t0)` means every Taylor coefficient of
//! total order `< m` in `(s - s0, t - t0)` vanishes. For `s^p t^q` the
//! `(i, j)` coefficient is `binom(p, i) s0^(p-i) binom(q, j) t0^(q-j)`.
//!
//! A kernel of dimension `k` at one random configuration bounds the kernel at
//! a general configuration above by `k` (rank is lower semicontinuous), so a
//! zero kernel proves the linear system is empty for general points. A
//! positive kernel proves nothing and is reported as inconclusive.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, Fp, PrimeField};
use crate::seeds::rng_for;
use crate::toric::hirzebruch_h0;

const LINSYS_TAG: u64 = 0x4c53;
const SAMPLE_ATTEMPTS: usize = 64;

pub const TOOL_VERSION: &str = concat!("conic-core/", env!("CARGO_PKG_VERSION"), "+schema1");

/// `x0^u0 x1^u1 y0^v0 y1^v1` on `F_e`; `y1` has degree `C0 + e F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionMonomial {
    pub u0: u32,
    pub u1: u32,
    pub v0: u32,
    pub v1: u32,
}

impl SectionMonomial {
    /// Exponents of `(s, t)` in the chart `x0 = y0 = 1`.
    pub fn affine_exponents(&self) -> (u32, u32) {
        (self.u1, self.v1)
    }
}

/// Ordered by `(v1, u1)`. Empty when `a` or `b` is negative.
pub fn section_basis(e: u32, a: i64, b: i64) -> Vec<SectionMonomial> {
    let mut out = Vec::new();
    if a < 0 || b < 0 {
        return out;
    }
    for v1 in 0..=a {
        let room = b - e as i64 * v1;
        if room < 0 {
            break;
        }
        for u1 in 0..=room {
            out.push(SectionMonomial { u0: (room - u1) as u32, u1: u1 as u32, v0: (a - v1) as u32, v1: v1 as u32 });
        }
    }
    out
}

/// The class `m (2 C0 + (e+n) F)` as `(C0, F)` coefficients.
pub fn twisted_class(e: u32, n: u32, m: u32) -> (i64, i64) {
    (2 * m as i64, m as i64 * (e as i64 + n as i64))
}

/// Number of Taylor conditions per point, `m (m+1) / 2`.
pub fn conditions_per_point(m: u32) -> usize {
    (m as usize * (m as usize + 1)) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointInstance {
    pub e: u32,
    pub n: u32,
    pub m: u32,
    /// `(s, t)` chart coordinates, pairwise distinct in `s`.
    pub points: Vec<(Fp, Fp)>,
}

impl FatPointInstance {
    pub fn new(e: u32, n: u32, m: u32, points: Vec<(Fp, Fp)>) -> Result<Self> {
        let mut seen = HashSet::new();
        if !points.iter().all(|p| seen.insert(p.0)) {
            return Err(Error::InvalidGrid("two points share a fiber".into()));
        }
        Ok(FatPointInstance { e, n, m, points })
    }

    /// Draws `d` points in distinct fibers, resampling on collisions.
    pub fn sample<R: Rng + ?Sized>(
        field: PrimeField,
        e: u32,
        n: u32,
        m: u32,
        d: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let mut seen = HashSet::with_capacity(d);
        let mut points = Vec::with_capacity(d);
        let mut attempts = 0;
        while points.len() < d {
            attempts += 1;
            if attempts > d + SAMPLE_ATTEMPTS {
                return Err(Error::SamplingExhausted(attempts - 1));
            }
            let s = field.random(rng);
            let t = field.random(rng);
            if seen.insert(s) {
                points.push((s, t));
            }
        }
        Ok(FatPointInstance { e, n, m, points })
    }

    pub fn d(&self) -> usize {
        self.points.len()
    }

    pub fn basis(&self) -> Vec<SectionMonomial> {
        let (a, b) = twisted_class(self.e, self.n, self.m);
        section_basis(self.e, a, b)
    }

    /// Rows are grouped by point, then by Taylor order `(i, j)` with
    /// `i + j < m` in order of increasing `i + j`, then increasing `j`.
    pub fn condition_matrix(&self, field: PrimeField) -> Result<ExactMatrix> {
        if self.m > 0 && self.m as u64 > field.modulus() {
            return Err(Error::DegenerateMultiplicity { order: self.m as u64 - 1, prime: field.modulus() });
        }
        let basis = self.basis();
        let per = conditions_per_point(self.m);
        let rows = per * self.points.len();
        let cols = basis.len();
        let mut mat = ExactMatrix::zeros(field, rows, cols);
        let orders: Vec<(u32, u32)> =
            (0..self.m).flat_map(|tot| (0..=tot).map(move |j| (tot - j, j))).collect();
        let max_p = basis.iter().map(|b| b.u1).max().unwrap_or(0);
        let max_q = basis.iter().map(|b| b.v1).max().unwrap_or(0);
        let binom: Vec<Vec<Fp>> = (0..=max_p.max(max_q))
            .map(|p| (0..self.m.max(1)).map(|i| field.binomial(p as u64, i as u64)).collect())
            .collect();
        for (k, &(s, t)) in self.points.iter().enumerate() {
            let spow = powers(field, s, max_p);
            let tpow = powers(field, t, max_q);
            for (r, &(i, j)) in orders.iter().enumerate() {
                let row = k * per + r;
                for (c, mono) in basis.iter().enumerate() {
                    let (p, q) = mono.affine_exponents();
                    if p < i || q < j {
                        continue;
                    }
                    let sx = field.mul(binom[p as usize][i as usize], spow[(p - i) as usize]);
                    let tx = field.mul(binom[q as usize][j as usize], tpow[(q - j) as usize]);
                    mat.set(row, c, field.mul(sx, tx));
                }
            }
        }
        Ok(mat)
    }
}

fn powers(field: PrimeField, x: Fp, max: u32) -> Vec<Fp> {
    let mut v = Vec::with_capacity(max as usize + 1);
    let mut acc = Fp::ONE;
    for _ in 0..=max {
        v.push(acc);
        acc = field.mul(acc, x);
    }
    v
}

/// Smallest kernel seen over one or more random configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionBound {
    pub e: u32,
    pub n: u32,
    pub m: u32,
    pub d: usize,
    pub rows: usize,
    pub cols: usize,
    pub kernel_dim: usize,
    /// Configurations tried beyond the first.
    pub retries_used: usize,
}

impl DimensionBound {
    /// `max(0, cols - rows)`, a bound no configuration can beat.
    pub fn unconditional_lower(&self) -> usize {
        self.cols.saturating_sub(self.rows)
    }
}

/// Upper bound for the dimension of the space of sections of
/// `m (2 C0 + (e+n) F)` with multiplicity `m` at `d` general points.
///
/// Tries up to `1 + retries` configurations and keeps the minimum, stopping
/// early once the unconditional floor `cols - rows` is reached.
pub fn generic_dim_upper(
    field: PrimeField,
    e: u32,
    n: u32,
    m: u32,
    d: usize,
    seed: u64,
    retries: usize,
) -> Result<DimensionBound> {
    if m == 0 {
        return Err(Error::InvalidGrid("multiplicity must be at least 1".into()));
    }
    let (a, b) = twisted_class(e, n, m);
    let cols = hirzebruch_h0(e, a, b) as usize;
    let rows = d * conditions_per_point(m);
    let floor = cols.saturating_sub(rows);
    let mut best = usize::MAX;
    let mut used = 0;
    for attempt in 0..=retries {
        let mut rng = rng_for(seed, &[LINSYS_TAG, e as u64, n as u64, m as u64, d as u64, attempt as u64]);
        let inst = FatPointInstance::sample(field, e, n, m, d, &mut rng)?;
        let mat = inst.condition_matrix(field)?;
        debug_assert_eq!(mat.shape(), (rows, cols));
        let kernel = cols - mat.rank();
        best = best.min(kernel);
        used = attempt;
        if best <= floor {
            break;
        }
    }
    Ok(DimensionBound { e, n, m, d, rows, cols, kernel_dim: best, retries_used: used })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// `d = 4n + 1`: the system is empty.
    #[serde(rename = "empty_4n_plus_1")]
    Empty4nPlus1,
    /// `d = 4n`: at most one section.
    #[serde(rename = "at_most_one_4n")]
    AtMostOne4n,
    /// `d = 4n`, `n >= 3`: the system is empty.
    #[serde(rename = "empty_4n_n_ge_3")]
    Empty4nNGe3,
    /// `n = 2`, `d = 8`: at least one section, unconditionally.
    #[serde(rename = "lower_bound_n2")]
    LowerBoundN2,
}

impl Claim {
    pub const ALL: [Claim; 4] = [Claim::Empty4nPlus1, Claim::AtMostOne4n, Claim::Empty4nNGe3, Claim::LowerBoundN2];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Empty4nPlus1 => "empty_4n_plus_1",
            Claim::AtMostOne4n => "at_most_one_4n",
            Claim::Empty4nNGe3 => "empty_4n_n_ge_3",
            Claim::LowerBoundN2 => "lower_bound_n2",
        }
    }

    pub fn point_count(self, n: u32) -> usize {
        match self {
            Claim::Empty4nPlus1 => 4 * n as usize + 1,
            _ => 4 * n as usize,
        }
    }

    pub fn check_point(self, p: GridPoint) -> Result<()> {
        let GridPoint { n, e, m } = p;
        if m == 0 {
            return Err(Error::InvalidGrid(format!("{}: m must be >= 1", self.id())));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("{}: n = {n} below 2", self.id())));
        }
        if e > n {
            return Err(Error::InvalidGrid(format!("{}: needs e <= n, got e = {e}, n = {n}", self.id())));
        }
        match self {
            Claim::Empty4nNGe3 if n < 3 => {
                Err(Error::InvalidGrid(format!("{}: needs n >= 3, got n = {n}", self.id())))
            }
            Claim::LowerBoundN2 if n != 2 => {
                Err(Error::InvalidGrid(format!("{}: needs n = 2, got n = {n}", self.id())))
            }
            _ => Ok(()),
        }
    }

    pub fn verdict(self, kernel_dim: usize) -> Verdict {
        match self {
            Claim::Empty4nPlus1 | Claim::Empty4nNGe3 if kernel_dim == 0 => Verdict::Certified,
            Claim::AtMostOne4n if kernel_dim <= 1 => Verdict::Certified,
            Claim::LowerBoundN2 if kernel_dim >= 1 => Verdict::Certified,
            Claim::LowerBoundN2 => Verdict::RefutedExpectation,
            _ => Verdict::Inconclusive,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty_4n_plus_1" | "empty-4n+1" => Ok(Claim::Empty4nPlus1),
            "at_most_one_4n" | "at-most-one-4n" => Ok(Claim::AtMostOne4n),
            "empty_4n_n_ge_3" | "empty-4n" => Ok(Claim::Empty4nNGe3),
            "lower_bound_n2" | "lower-n2" => Ok(Claim::LowerBoundN2),
            other => Err(Error::InvalidGrid(format!("unknown claim {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
    RefutedExpectation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::RefutedExpectation => "refuted_expectation",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: u32,
    pub e: u32,
    pub m: u32,
}

/// One ledger line. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub n: u32,
    pub e: u32,
    pub m: u32,
    pub d: usize,
    pub prime: u64,
    pub seed: u64,
    pub retries: usize,
    pub rows: usize,
    pub cols: usize,
    pub kernel_dim: usize,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

impl Certificate {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub field: PrimeField,
    pub seed: u64,
    pub retries: usize,
    pub jobs: usize,
    /// When false, `elapsed_ms` is written as 0 so ledgers are byte-stable.
    pub record_timing: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { field: PrimeField::default(), seed: 0, retries: 3, jobs: 1, record_timing: true }
    }
}

/// All `(n, e, m)` with `e <= n` from the given ranges.
pub fn grid(ns: &[u32], es: Option<&[u32]>, ms: &[u32]) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for &n in ns {
        let e_vals: Vec<u32> = match es {
            Some(list) => list.iter().copied().filter(|&e| e <= n).collect(),
            None => (0..=n).collect(),
        };
        for e in e_vals {
            for &m in ms {
                out.push(GridPoint { n, e, m });
            }
        }
    }
    out
}

/// Runs one certificate per grid point. Output order follows `points`
/// regardless of the worker count.
pub fn certify_claim(claim: Claim, points: &[GridPoint], opts: &CertifyOptions) -> Result<Vec<Certificate>> {
    for &p in points {
        claim.check_point(p)?;
    }
    let run = |p: &GridPoint| -> Result<Certificate> {
        let start = Instant::now();
        let d = claim.point_count(p.n);
        let bound = generic_dim_upper(opts.field, p.e, p.n, p.m, d, opts.seed, opts.retries)?;
        let elapsed_ms = if opts.record_timing { start.elapsed().as_millis() as u64 } else { 0 };
        Ok(Certificate {
            claim,
            n: p.n,
            e: p.e,
            m: p.m,
            d,
            prime: opts.field.modulus(),
            seed: opts.seed,
            retries: bound.retries_used,
            rows: bound.rows,
            cols: bound.cols,
            kernel_dim: bound.kernel_dim,
            verdict: claim.verdict(bound.kernel_dim),
            elapsed_ms,
            tool_version: TOOL_VERSION.to_string(),
        })
    };
    if opts.jobs <= 1 {
        return points.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidGrid(format!("worker pool: {e}")))?;
    pool.install(|| points.par_iter().map(run).collect())
}
