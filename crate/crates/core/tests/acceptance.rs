//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use conic_core::conic::{ConicBundleSpec, Family, Line};
use conic_core::exactfield::PrimeField;
use conic_core::ledger::append_certificates;
use conic_core::linsys::{certify_claim, grid, Certificate, CertifyOptions, Claim, Verdict};
use conic_core::picard::{two_ray_numerics, LatticeMap, MarkedSurface, Marker};
use conic_core::seeds::rng_for;
use conic_core::toric::{hirzebruch_h0, BiClass, SplitBundleSpace};
use rand::Rng;

const SEED: u64 = 7;
const RETRIES: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn enumerate_fe(e: i64, a: i64, b: i64) -> u64 {
    let mut count = 0;
    for v1 in 0..=a {
        let v0 = a - v1;
        for u1 in 0..=b {
            for u0 in 0..=b {
                if v0 >= 0 && u0 + u1 + e * v1 == b {
                    count += 1;
                }
            }
        }
    }
    count
}

fn ac1_h0_oracle() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for e in 0..=6u32 {
        for a in 0..=8 {
            for b in 0..=12 {
                let want = enumerate_fe(e as i64, a, b);
                ensure(hirzebruch_h0(e, a, b) == want, || format!("e={e} a={a} b={b}"))?;
                checked += 1;
            }
        }
        let anti = hirzebruch_h0(e, 2, e as i64 + 2);
        ensure(anti >= 9, || format!("h0(F_{e}, -K) = {anti}"))?;
    }
    within(Duration::from_secs(1), start.elapsed())?;
    Ok(format!("{checked} classes agree; h0(-K) >= 9 for e <= 6"))
}

fn ac2_intersection() -> Outcome {
    for n in 2..=8i64 {
        for e in 0..=n as u32 {
            let s = MarkedSurface::hirzebruch(e);
            let gamma = s.class(2, e as i64 + n);
            let sq = s.self_intersection(&gamma).map_err(|x| x.to_string())?;
            let kg = s.intersect(&s.canonical_class(), &gamma).map_err(|x| x.to_string())?;
            let g = s.adjunction_genus(&gamma).map_err(|x| x.to_string())?;
            ensure(sq == 4 * n, || format!("Gamma^2 = {sq} for n={n} e={e}"))?;
            ensure(kg == -2 * n - 4, || format!("K.Gamma = {kg} for n={n} e={e}"))?;
            ensure(g == n - 1, || format!("g = {g} for n={n} e={e}"))?;
        }
    }
    Ok("Gamma^2 = 4n, K.Gamma = -2n-4, g = n-1 for 2 <= n <= 8".into())
}

fn ac3_two_ray() -> Outcome {
    for delta in 0..=40u32 {
        for r in 0..=8i64 {
            let t = two_ray_numerics(delta, r);
            ensure(t.square == 8 - delta as i64 + 4 * r, || format!("delta={delta} r={r}: {}", t.square))?;
        }
    }
    for n in 2..=10u32 {
        let t = two_ray_numerics(4 * n, n as i64 - 2);
        ensure(t.square == 0 && t.nef_boundary && t.fiber_deg == 2, || format!("n={n}: {t:?}"))?;
    }
    Ok("square = 8 - delta + 4r on delta <= 40, r <= 8; boundary at delta = 4n".into())
}

fn ac4_elm() -> Outcome {
    let mut rng = rng_for(SEED, &[4]);
    let mut steps = 0;
    for trial in 0..200 {
        let d = rng.gen_range(1..6);
        let markers = (0..d).map(|_| Marker { on_c0: rng.gen_bool(0.5) }).collect();
        let start = MarkedSurface::new(rng.gen_range(0..5), markers);
        let mut cur = start.clone();
        let mut total = LatticeMap::identity(start.rank());
        for _ in 0..rng.gen_range(1..10) {
            if let Ok((next, map)) = cur.elm_at(rng.gen_range(0..d)) {
                total = total.then(&map);
                cur = next;
                steps += 1;
            }
        }
        ensure(total.is_isometry(&start.gram_matrix(), &cur.gram_matrix()), || format!("trial {trial}"))?;
    }
    for e in 1..8 {
        let (mid, there) = MarkedSurface::hirzebruch(e).elm(false).map_err(|x| x.to_string())?;
        let (_, back) = mid.elm_at(0).map_err(|x| x.to_string())?;
        ensure(there.then(&back) == LatticeMap::identity(3), || format!("round trip on F_{e}"))?;
    }
    Ok(format!("200 compositions ({steps} steps) are isometries; off-C0 round trip is identity"))
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8)
}

fn opts(record_timing: bool) -> CertifyOptions {
    CertifyOptions { field: PrimeField::default(), seed: SEED, retries: RETRIES, jobs: jobs(), record_timing }
}

fn run_claim(claim: Claim, ns: &[u32], es: Option<&[u32]>, timing: bool) -> Result<Vec<Certificate>, String> {
    certify_claim(claim, &grid(ns, es, &[1, 2, 3]), &opts(timing)).map_err(|e| e.to_string())
}

fn all_zero(certs: &[Certificate]) -> Result<(), String> {
    for c in certs {
        ensure(c.kernel_dim == 0 && c.verdict == Verdict::Certified && c.retries <= RETRIES, || {
            format!("n={} e={} m={}: kernel {} ({})", c.n, c.e, c.m, c.kernel_dim, c.verdict)
        })?;
    }
    Ok(())
}

fn ac5_empty_4n_plus_1() -> Outcome {
    let start = Instant::now();
    let certs = run_claim(Claim::Empty4nPlus1, &[3, 4], None, true)?;
    all_zero(&certs)?;
    within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!("{} certificates, kernel 0, {:?}", certs.len(), start.elapsed()))
}

fn ac6_empty_4n() -> Outcome {
    let start = Instant::now();
    let certs = run_claim(Claim::Empty4nNGe3, &[3, 4, 5], None, true)?;
    all_zero(&certs)?;
    within(Duration::from_secs(120), start.elapsed())?;
    Ok(format!("{} certificates, kernel 0, {:?}", certs.len(), start.elapsed()))
}

fn ac7_n2_contrast() -> Outcome {
    let start = Instant::now();
    let certs = run_claim(Claim::LowerBoundN2, &[2], Some(&[0]), true)?;
    for c in &certs {
        ensure(c.cols - c.rows == 1, || format!("m={}: cols - rows = {}", c.m, c.cols as i64 - c.rows as i64))?;
        ensure(c.kernel_dim == 1 && c.verdict == Verdict::Certified, || {
            format!("m={}: kernel {} ({})", c.m, c.kernel_dim, c.verdict)
        })?;
    }
    within(Duration::from_secs(5), start.elapsed())?;
    Ok(format!("m = 1..3 all kernel 1, {:?}", start.elapsed()))
}

fn ac8_discriminants() -> Outcome {
    let f = PrimeField::default();
    let mut rng = rng_for(SEED, &[8]);
    for seed in 0..20 {
        let n = rng.gen_range(2..5);
        let mut a = [rng.gen_range(0..4u32), rng.gen_range(0..4), rng.gen_range(0..4)];
        a.sort_unstable_by(|x, y| y.cmp(x));
        let space = SplitBundleSpace::new(n, a).map_err(|e| e.to_string())?;
        let spec = ConicBundleSpec::random(space, rng.gen_range(0..3), f, seed).map_err(|e| e.to_string())?;
        let disc = spec.discriminant();
        let d = spec.degrees();
        ensure(disc.poly.homogeneous_degree() == Some(d[0] + d[3] + d[5]), || format!("spec {seed}"))?;
    }
    for a in 2..8 {
        let s = ConicBundleSpec::family(3, Family::A20 { a }, f, SEED).map_err(|e| e.to_string())?;
        ensure(s.discriminant().poly.homogeneous_degree() == Some(2 * a + 4), || format!("(a,2,0) a={a}"))?;
        ensure(s.witness_divisor().map_err(|e| e.to_string())?.branch_degree == 4, || "quartic".into())?;
    }
    for b in 1..8 {
        let s = ConicBundleSpec::family(3, Family::B10 { b }, f, SEED).map_err(|e| e.to_string())?;
        ensure(s.discriminant().poly.homogeneous_degree() == Some(2 * b + 2), || format!("(b,1,0) b={b}"))?;
        ensure(s.witness_divisor().map_err(|e| e.to_string())?.branch_degree == 2, || "quadric".into())?;
    }
    let k3 = ConicBundleSpec::family(3, Family::A0N0 { a0: 4 }, f, SEED).map_err(|e| e.to_string())?;
    let w = k3.witness_divisor().map_err(|e| e.to_string())?;
    ensure(w.branch_degree == 6 && w.branch.homogeneous_degree() == Some(6), || "sextic".into())?;
    Ok("20 random specs, both families, branch degrees 4/2/6".into())
}

fn ac9_restriction() -> Outcome {
    let f = PrimeField::default();
    for seed in 0..5u64 {
        let space = SplitBundleSpace::new(3 + seed as u32 % 2, [3, 2, seed as u32 % 2]).map_err(|e| e.to_string())?;
        let spec = ConicBundleSpec::random(space, 0, f, seed).map_err(|e| e.to_string())?;
        let mut rng = rng_for(SEED, &[9, seed]);
        let line = Line::random(f, space.n() as usize, &mut rng).map_err(|e| e.to_string())?;
        let a = spec.restrict_to_line(&line).map_err(|e| e.to_string())?.discriminant().poly;
        let b = line.restrict(&spec.discriminant().poly).map_err(|e| e.to_string())?;
        ensure(!a.is_zero() && a.to_serialized() == b.to_serialized(), || format!("pair {seed}"))?;
    }
    Ok("5 (spec, line) pairs agree exactly".into())
}

fn ac10_anticanonical() -> Outcome {
    let f = PrimeField::default();
    for n in 2..=8u32 {
        for a0 in 0..=4u32 {
            for a1 in 0..=a0 {
                for a2 in 0..=a1 {
                    let space = SplitBundleSpace::new(n, [a0, a1, a2]).map_err(|e| e.to_string())?;
                    let sum = (a0 + a1 + a2) as i64;
                    ensure(space.anticanonical() == BiClass::new(n as i64 - sum, 3), || format!("n={n}"))?;
                    let spec = ConicBundleSpec::zero(space, conic_core::conic::chain_degrees(space, 0).unwrap(), f)
                        .map_err(|e| e.to_string())?;
                    let rep = spec.antican_effectivity();
                    ensure(rep.class == BiClass::new(n as i64 - sum, 1), || format!("-K_X for n={n}"))?;
                }
            }
        }
        for a0 in n..n + 4 {
            let s = ConicBundleSpec::family(n, Family::A0N0 { a0 }, f, SEED).map_err(|e| e.to_string())?;
            let rep = s.antican_effectivity();
            ensure(rep.class == BiClass::new(-(a0 as i64), 1), || format!("class n={n} a0={a0}"))?;
            let w = rep.witness.ok_or_else(|| format!("no witness n={n} a0={a0}"))?;
            ensure(w.to_string() == "y0", || format!("witness {w}"))?;
        }
    }
    Ok("-K_T = (n - sum a, 3), -K_X = (n - sum a, 1); y0 witness for (a0, n, 0)".into())
}

fn ledger_bytes(timing: bool) -> Result<Vec<u8>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("ledger.jsonl");
    let batches = [
        run_claim(Claim::Empty4nPlus1, &[3, 4], None, timing)?,
        run_claim(Claim::Empty4nNGe3, &[3, 4, 5], None, timing)?,
        run_claim(Claim::LowerBoundN2, &[2], Some(&[0]), timing)?,
    ];
    for b in &batches {
        append_certificates(&path, b).map_err(|e| e.to_string())?;
    }
    std::fs::read(&path).map_err(|e| e.to_string())
}

fn strip_elapsed(bytes: &[u8]) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(bytes)
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v
        })
        .collect()
}

fn ac11_determinism() -> Outcome {
    let first = ledger_bytes(false)?;
    let second = ledger_bytes(false)?;
    ensure(first == second, || "untimed ledgers differ".into())?;
    let timed_a = ledger_bytes(true)?;
    let timed_b = ledger_bytes(true)?;
    ensure(strip_elapsed(&timed_a) == strip_elapsed(&timed_b), || "timed ledgers differ beyond elapsed_ms".into())?;
    ensure(strip_elapsed(&timed_a) == strip_elapsed(&first), || "timing changes results".into())?;
    Ok(format!("{} bytes identical across runs", first.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1  h0 oracle equality", ac1_h0_oracle),
        ("AC2  intersection / adjunction", ac2_intersection),
        ("AC3  two-ray numerics", ac3_two_ray),
        ("AC4  elm isometry", ac4_elm),
        ("AC5  emptiness d = 4n+1", ac5_empty_4n_plus_1),
        ("AC6  emptiness d = 4n, n >= 3", ac6_empty_4n),
        ("AC7  n = 2 contrast", ac7_n2_contrast),
        ("AC8  discriminant degrees", ac8_discriminants),
        ("AC9  restriction identity", ac9_restriction),
        ("AC10 anticanonical classes", ac10_anticanonical),
        ("AC11 determinism", ac11_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
