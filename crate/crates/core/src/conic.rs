//! Conic bundles `sum sigma_i y_j y_k = 0` inside a split projective bundle.
//!
//! The six coefficient forms are stored in the order
//! `(y0^2, y0y1, y0y2, y1^2, y1y2, y2^2)`, matching the symmetric matrix
//!
//! ```text
//! [ s0 s1 s2 ]
//! [ s1 s3 s4 ]
//! [ s2 s4 s5 ]
//! ```
//!
//! A spec is well formed when `d_i - a_j - a_k` is the same for all six
//! slots; that common value is the degree offset and the hypersurface
//! has class `(offset, 2)`.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{binary_form_squarefree, indexed_vars, ExactMatrix, Fp, MultiPoly, PrimeField, Term};
use crate::seeds::rng_for;
use crate::toric::{BiClass, SplitBundleSpace};

/// `(j, k)` for each coefficient slot.
pub const SLOT_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

const SQUAREFREE_TAG: u64 = 0x5351;
const FAMILY_TAG: u64 = 0x4b4f;
const LINE_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundleSpec {
    space: SplitBundleSpace,
    degrees: [u32; 6],
    sigmas: Vec<MultiPoly>,
    field: PrimeField,
    seed: Option<u64>,
}

/// On-disk JSON form of a spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub n: u32,
    pub a: [u32; 3],
    pub d: [u32; 6],
    pub sigmas: Vec<Vec<Term>>,
    pub prime: u64,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub poly: MultiPoly,
    /// Always `d0 + d3 + d5`, even when the determinant vanishes.
    pub degree: u32,
    pub degenerate: bool,
}

/// The divisor `{y0 = 0, s3 y1^2 + 2 s4 y1 y2 + s5 y2^2 = 0}`, a double
/// cover of the base branched along `s4^2 - s3 s5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDivisor {
    pub quadric: [MultiPoly; 3],
    pub branch: MultiPoly,
    pub branch_degree: u32,
}

/// A Cox monomial `x^u y^v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxMonomial {
    pub x: Vec<u32>,
    pub y: [u32; 3],
}

impl fmt::Display for CoxMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let names = self.x.iter().enumerate().map(|(i, &k)| (format!("x{i}"), k));
        let ys = self.y.iter().enumerate().map(|(j, &k)| (format!("y{j}"), k));
        for (v, k) in names.chain(ys) {
            match k {
                0 => {}
                1 => parts.push(v),
                _ => parts.push(format!("{v}^{k}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticanonicalReport {
    /// `-K_X` in the `(H1, H2)` basis.
    pub class: BiClass,
    /// A section of `-K_X` through `y0`, when one exists.
    pub witness: Option<CoxMonomial>,
    pub h0: BigUint,
    pub effective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub trials: Vec<bool>,
}

impl SquarefreeReport {
    /// True when every restricted discriminant was squarefree. This is
    /// heuristic evidence that the discriminant is reduced, not a proof of
    /// smoothness.
    pub fn consistent_with_reduced(&self) -> bool {
        self.trials.iter().all(|&t| t)
    }
}

/// A line in `P^{n-1}` parametrized as `x = s P + t Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub p: Vec<Fp>,
    pub q: Vec<Fp>,
}

impl Line {
    /// `{x_2 = ... = x_{n-1} = 0}` with `x0 = s`, `x1 = t`.
    pub fn coordinate(n: usize) -> Self {
        let mut p = vec![Fp::ZERO; n];
        let mut q = vec![Fp::ZERO; n];
        p[0] = Fp::ONE;
        q[1] = Fp::ONE;
        Line { p, q }
    }

    /// A random rank-2 line.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Result<Self> {
        for _ in 0..LINE_ATTEMPTS {
            let line = Line {
                p: (0..n).map(|_| field.random(rng)).collect(),
                q: (0..n).map(|_| field.random(rng)).collect(),
            };
            if line.check(field).is_ok() {
                return Ok(line);
            }
        }
        Err(Error::DegenerateLine { n })
    }

    fn check(&self, field: PrimeField) -> Result<()> {
        let n = self.p.len();
        if self.q.len() != n {
            return Err(Error::DegenerateLine { n });
        }
        let mut entries = self.p.clone();
        entries.extend_from_slice(&self.q);
        if ExactMatrix::from_rows(field, 2, n, entries).rank() != 2 {
            return Err(Error::DegenerateLine { n });
        }
        Ok(())
    }

    /// The linear forms `P_i x0 + Q_i x1` in the line's own coordinates.
    fn pullback_forms(&self, field: PrimeField) -> Vec<MultiPoly> {
        let v = indexed_vars("x", 2);
        self.p
            .iter()
            .zip(&self.q)
            .map(|(&pi, &qi)| {
                let s = MultiPoly::monomial(field, v.clone(), vec![1, 0], pi);
                let t = MultiPoly::monomial(field, v.clone(), vec![0, 1], qi);
                s.add(&t).expect("same variables")
            })
            .collect()
    }

    /// Pulls a form on `P^{n-1}` back to `P^1`.
    pub fn restrict(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let mut out = f.compose(&self.pullback_forms(f.field()))?;
        if let Some(d) = f.degree_tag() {
            out = out.with_degree(d)?;
        }
        Ok(out)
    }
}

/// The three families of split-coefficient bundles, with degrees
/// `d_i = a_j + a_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `(a, 2, 0)`, needs `a >= 2`.
    A20 { a: u32 },
    /// `(b, 1, 0)`, needs `b >= 1`.
    B10 { b: u32 },
    /// `(a0, n, 0)`, needs `a0 >= n`.
    A0N0 { a0: u32 },
}

impl Family {
    pub fn weights(self, n: u32) -> Result<[u32; 3]> {
        match self {
            Family::A20 { a } if a >= 2 => Ok([a, 2, 0]),
            Family::B10 { b } if b >= 1 => Ok([b, 1, 0]),
            Family::A0N0 { a0 } if a0 >= n => Ok([a0, n, 0]),
            other => Err(Error::InvalidFamily(format!("{other:?} violates a0 >= a1 >= a2 for n = {n}"))),
        }
    }

    fn tag(self) -> u64 {
        match self {
            Family::A20 { .. } => 1,
            Family::B10 { .. } => 2,
            Family::A0N0 { .. } => 3,
        }
    }
}

impl ConicBundleSpec {
    /// Builds and validates a spec. Each sigma must live in `x0..x{n-1}`.
    pub fn new(
        space: SplitBundleSpace,
        degrees: [u32; 6],
        sigmas: Vec<MultiPoly>,
        field: PrimeField,
        seed: Option<u64>,
    ) -> Result<Self> {
        if sigmas.len() != 6 {
            return Err(Error::MalformedSpec(format!("expected 6 coefficient forms, got {}", sigmas.len())));
        }
        let mut spec = ConicBundleSpec { space, degrees, sigmas, field, seed };
        spec.validate()?;
        for (s, &d) in spec.sigmas.iter_mut().zip(&degrees) {
            *s = s.clone().with_degree(d).expect("validated");
        }
        Ok(spec)
    }

    /// Spec with all six forms zero.
    pub fn zero(space: SplitBundleSpace, degrees: [u32; 6], field: PrimeField) -> Result<Self> {
        let vars = indexed_vars("x", space.n() as usize);
        Self::new(space, degrees, vec![MultiPoly::zero(field, vars); 6], field, None)
    }

    /// Uniformly random forms for degrees `a_j + a_k + offset`.
    pub fn random(space: SplitBundleSpace, offset: i64, field: PrimeField, seed: u64) -> Result<Self> {
        let degrees = chain_degrees(space, offset)?;
        let mut rng = rng_for(seed, &[FAMILY_TAG, space.n() as u64, offset as u64]);
        let vars = indexed_vars("x", space.n() as usize);
        let sigmas = degrees
            .iter()
            .map(|&d| MultiPoly::random_homogeneous(field, vars.clone(), d, &mut rng))
            .collect();
        Self::new(space, degrees, sigmas, field, Some(seed))
    }

    /// Checks the degree chain and homogeneity; returns the common offset.
    pub fn validate(&self) -> Result<i64> {
        let a = self.space.a();
        let offsets: Vec<i64> = SLOT_PAIRS
            .iter()
            .zip(&self.degrees)
            .map(|(&(j, k), &d)| d as i64 - a[j] as i64 - a[k] as i64)
            .collect();
        for (position, &o) in offsets.iter().enumerate().skip(1) {
            if o != offsets[0] {
                return Err(Error::DegreeChainBroken { position, expected: offsets[0], found: o });
            }
        }
        let n = self.space.n() as usize;
        for (index, (s, &d)) in self.sigmas.iter().zip(&self.degrees).enumerate() {
            if s.num_vars() != n {
                return Err(Error::WrongVariableCount { index, expected: n, got: s.num_vars() });
            }
            if !s.is_homogeneous_of(d) {
                return Err(Error::NonHomogeneous { index, degree: d });
            }
        }
        Ok(offsets[0])
    }

    pub fn space(&self) -> SplitBundleSpace {
        self.space
    }

    pub fn degrees(&self) -> [u32; 6] {
        self.degrees
    }

    pub fn sigmas(&self) -> &[MultiPoly] {
        &self.sigmas
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn offset(&self) -> i64 {
        self.degrees[0] as i64 - 2 * self.space.a()[0] as i64
    }

    /// Class `(offset, 2)` of the hypersurface in the bundle.
    pub fn hypersurface_class(&self) -> BiClass {
        BiClass::new(self.offset(), 2)
    }

    /// For `n >= 7` the six forms always have a common zero, over which the
    /// fiber is the whole plane.
    pub fn has_unavoidable_nonflat_locus(&self) -> bool {
        self.space.n() >= 7
    }

    fn entry(&self, j: usize, k: usize) -> &MultiPoly {
        let (j, k) = if j <= k { (j, k) } else { (k, j) };
        let slot = SLOT_PAIRS.iter().position(|&p| p == (j, k)).unwrap();
        &self.sigmas[slot]
    }

    /// Determinant of the symmetric coefficient matrix.
    pub fn discriminant(&self) -> Discriminant {
        let m = |j, k| self.entry(j, k);
        let minor = |a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly| {
            a.mul(b).unwrap().sub(&c.mul(d).unwrap()).unwrap()
        };
        let c0 = minor(m(1, 1), m(2, 2), m(1, 2), m(2, 1));
        let c1 = minor(m(1, 0), m(2, 2), m(1, 2), m(2, 0));
        let c2 = minor(m(1, 0), m(2, 1), m(1, 1), m(2, 0));
        let poly = m(0, 0)
            .mul(&c0)
            .unwrap()
            .sub(&m(0, 1).mul(&c1).unwrap())
            .unwrap()
            .add(&m(0, 2).mul(&c2).unwrap())
            .unwrap();
        let degree = self.degrees[0] + self.degrees[3] + self.degrees[5];
        Discriminant { degenerate: poly.is_zero(), poly, degree }
    }

    /// Pulls every coefficient form back along `line`, giving a surface
    /// conic bundle over `P^1` with the same degrees.
    pub fn restrict_to_line(&self, line: &Line) -> Result<ConicBundleSpec> {
        if line.p.len() != self.space.n() as usize {
            return Err(Error::DegenerateLine { n: self.space.n() as usize });
        }
        line.check(self.field)?;
        let sigmas = self.sigmas.iter().map(|s| line.restrict(s)).collect::<Result<Vec<_>>>()?;
        let space = SplitBundleSpace::new(2, self.space.a())?;
        ConicBundleSpec::new(space, self.degrees, sigmas, self.field, self.seed)
    }

    /// Random member of one of the split-coefficient families.
    pub fn family(n: u32, family: Family, field: PrimeField, seed: u64) -> Result<Self> {
        let a = family.weights(n)?;
        let space = SplitBundleSpace::new(n, a)?;
        let degrees = chain_degrees(space, 0)?;
        let mut rng = rng_for(seed, &[FAMILY_TAG, family.tag(), n as u64, a[0] as u64]);
        let vars = indexed_vars("x", n as usize);
        let sigmas = degrees
            .iter()
            .map(|&d| MultiPoly::random_homogeneous(field, vars.clone(), d, &mut rng))
            .collect();
        Self::new(space, degrees, sigmas, field, Some(seed))
    }

    /// Requires offset zero.
    pub fn witness_divisor(&self) -> Result<WitnessDivisor> {
        let off = self.offset();
        if off != 0 {
            return Err(Error::NotSplitFamily(off));
        }
        let [s3, s4, s5] = [&self.sigmas[3], &self.sigmas[4], &self.sigmas[5]];
        let branch = s4.mul(s4)?.sub(&s3.mul(s5)?)?;
        let a = self.space.a();
        Ok(WitnessDivisor {
            quadric: [s3.clone(), s4.clone(), s5.clone()],
            branch,
            branch_degree: 2 * (a[1] + a[2]),
        })
    }

    /// `-K_X` by adjunction, with a `y0 x0^k` section when `-K_X - (-a0, 1)`
    /// is effective in the `x` direction.
    pub fn antican_effectivity(&self) -> AnticanonicalReport {
        let class = self.space.anticanonical_of_hypersurface(self.hypersurface_class());
        let a0 = self.space.a()[0] as i64;
        let witness = (class.beta == 1 && class.alpha + a0 >= 0).then(|| {
            let mut x = vec![0; self.space.n() as usize];
            x[0] = (class.alpha + a0) as u32;
            CoxMonomial { x, y: [1, 0, 0] }
        });
        let h0 = self.space.h0(class);
        AnticanonicalReport { class, witness, effective: !h0.is_zero(), h0 }
    }

    /// Restricts the discriminant to `trials` random lines and tests each
    /// restriction for repeated roots.
    pub fn squarefree_check(&self, seed: u64, trials: usize) -> Result<SquarefreeReport> {
        let disc = self.discriminant();
        if disc.degenerate {
            return Err(Error::ZeroDiscriminant);
        }
        let n = self.space.n() as usize;
        let mut results = Vec::with_capacity(trials);
        for trial in 0..trials {
            let mut rng = rng_for(seed, &[SQUAREFREE_TAG, trial as u64]);
            let line = Line::random(self.field, n, &mut rng)?;
            let restricted = line.restrict(&disc.poly)?;
            let ok = !restricted.is_zero() && binary_form_squarefree(&restricted)?;
            results.push(ok);
        }
        Ok(SquarefreeReport { trials: results })
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            n: self.space.n(),
            a: self.space.a(),
            d: self.degrees,
            sigmas: self.sigmas.iter().map(|s| s.to_serialized()).collect(),
            prime: self.field.modulus(),
            seed: self.seed,
        }
    }

    pub fn from_file(file: &SpecFile) -> Result<Self> {
        let field = PrimeField::new(file.prime)?;
        let space = SplitBundleSpace::new(file.n, file.a)?;
        if file.sigmas.len() != 6 {
            return Err(Error::MalformedSpec(format!("expected 6 sigma term lists, got {}", file.sigmas.len())));
        }
        let vars = indexed_vars("x", file.n as usize);
        let sigmas = file
            .sigmas
            .iter()
            .map(|terms| MultiPoly::from_serialized(field, vars.clone(), terms))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, file.d, sigmas, field, file.seed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// Degrees `a_j + a_k + offset`; errors if any would be negative.
pub fn chain_degrees(space: SplitBundleSpace, offset: i64) -> Result<[u32; 6]> {
    let a = space.a();
    let mut d = [0u32; 6];
    for (slot, &(j, k)) in SLOT_PAIRS.iter().enumerate() {
        let v = a[j] as i64 + a[k] as i64 + offset;
        if v < 0 {
            return Err(Error::InvalidFamily(format!("offset {offset} makes d_{slot} negative")));
        }
        d[slot] = v as u32;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn split_degrees_validate_with_zero_offset() {
        let space = SplitBundleSpace::new(3, [4, 2, 1]).unwrap();
        let d = chain_degrees(space, 0).unwrap();
        assert_eq!(d, [8, 6, 5, 4, 3, 2]);
        let spec = ConicBundleSpec::zero(space, d, field()).unwrap();
        assert_eq!(spec.validate(), Ok(0));
    }

    #[test]
    fn bumped_degree_breaks_chain() {
        let space = SplitBundleSpace::new(3, [4, 2, 1]).unwrap();
        let mut d = chain_degrees(space, 0).unwrap();
        d[1] += 1;
        let err = ConicBundleSpec::zero(space, d, field()).unwrap_err();
        assert!(matches!(err, Error::DegreeChainBroken { position: 1, .. }));
    }

    #[test]
    fn non_homogeneous_sigma_rejected() {
        let f = field();
        let space = SplitBundleSpace::new(2, [1, 1, 0]).unwrap();
        let d = chain_degrees(space, 0).unwrap();
        let v = indexed_vars("x", 2);
        let mut sigmas = vec![MultiPoly::zero(f, v.clone()); 6];
        sigmas[3] = MultiPoly::monomial(f, v.clone(), vec![1, 0], Fp::ONE);
        let err = ConicBundleSpec::new(space, d, sigmas, f, None).unwrap_err();
        assert_eq!(err, Error::NonHomogeneous { index: 3, degree: 2 });
    }

    #[test]
    fn diagonal_discriminant_is_product() {
        let f = field();
        let space = SplitBundleSpace::new(3, [2, 1, 0]).unwrap();
        let mut spec = ConicBundleSpec::random(space, 1, f, 4).unwrap();
        let v = indexed_vars("x", 3);
        for slot in [1, 2, 4] {
            spec.sigmas[slot] = MultiPoly::zero(f, v.clone());
        }
        let disc = spec.discriminant();
        let expect = spec.sigmas[0].mul(&spec.sigmas[3]).unwrap().mul(&spec.sigmas[5]).unwrap();
        assert_eq!(disc.poly, expect);
        assert_eq!(disc.degree, spec.degrees[0] + spec.degrees[3] + spec.degrees[5]);
    }

    #[test]
    fn family_degrees() {
        let f = field();
        for a in 2..7 {
            let s = ConicBundleSpec::family(3, Family::A20 { a }, f, 1).unwrap();
            assert_eq!(s.discriminant().degree, 2 * a + 4);
            assert_eq!(s.witness_divisor().unwrap().branch_degree, 4);
        }
        for b in 1..6 {
            let s = ConicBundleSpec::family(3, Family::B10 { b }, f, 1).unwrap();
            assert_eq!(s.discriminant().degree, 2 * b + 2);
            assert_eq!(s.witness_divisor().unwrap().branch_degree, 2);
        }
        let s = ConicBundleSpec::family(3, Family::A0N0 { a0: 4 }, f, 1).unwrap();
        assert_eq!(s.witness_divisor().unwrap().branch_degree, 6);
        assert_eq!(s.witness_divisor().unwrap().branch.homogeneous_degree(), Some(6));
        assert!(ConicBundleSpec::family(3, Family::A20 { a: 1 }, f, 1).is_err());
        assert!(ConicBundleSpec::family(3, Family::A0N0 { a0: 2 }, f, 1).is_err());
    }

    #[test]
    fn family_is_seed_deterministic() {
        let f = field();
        let a = ConicBundleSpec::family(3, Family::A20 { a: 5 }, f, 9).unwrap();
        let b = ConicBundleSpec::family(3, Family::A20 { a: 5 }, f, 9).unwrap();
        let c = ConicBundleSpec::family(3, Family::A20 { a: 5 }, f, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn witness_requires_split_family() {
        let space = SplitBundleSpace::new(3, [2, 1, 0]).unwrap();
        let spec = ConicBundleSpec::random(space, 1, field(), 2).unwrap();
        assert_eq!(spec.witness_divisor().unwrap_err(), Error::NotSplitFamily(1));
    }

    #[test]
    fn coordinate_line_sets_trailing_variables_to_zero() {
        let f = field();
        let space = SplitBundleSpace::new(4, [2, 1, 0]).unwrap();
        let spec = ConicBundleSpec::random(space, 0, f, 3).unwrap();
        let r = spec.restrict_to_line(&Line::coordinate(4)).unwrap();
        for (orig, res) in spec.sigmas().iter().zip(r.sigmas()) {
            let kept: Vec<(Vec<u32>, Fp)> = orig
                .terms()
                .filter(|(e, _)| e[2] == 0 && e[3] == 0)
                .map(|(e, c)| (e[..2].to_vec(), c))
                .collect();
            let expect = MultiPoly::from_terms(f, indexed_vars("x", 2), kept).unwrap();
            assert_eq!(res.terms().collect::<Vec<_>>(), expect.terms().collect::<Vec<_>>());
        }
    }

    #[test]
    fn degenerate_lines_rejected() {
        let f = field();
        let space = SplitBundleSpace::new(3, [1, 0, 0]).unwrap();
        let spec = ConicBundleSpec::random(space, 0, f, 3).unwrap();
        let line = Line { p: vec![Fp::ONE, Fp::ZERO, Fp::ZERO], q: vec![f.elem(2), Fp::ZERO, Fp::ZERO] };
        assert!(matches!(spec.restrict_to_line(&line), Err(Error::DegenerateLine { .. })));
    }

    #[test]
    fn zero_spec_restricts_to_zero() {
        let f = field();
        let space = SplitBundleSpace::new(3, [1, 1, 0]).unwrap();
        let spec = ConicBundleSpec::zero(space, chain_degrees(space, 0).unwrap(), f).unwrap();
        let mut rng = rng_for(1, &[]);
        let line = Line::random(f, 3, &mut rng).unwrap();
        let r = spec.restrict_to_line(&line).unwrap();
        assert!(r.sigmas().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn anticanonical_witness() {
        let f = field();
        for n in 2..6 {
            let s = ConicBundleSpec::family(n, Family::A0N0 { a0: n + 1 }, f, 0).unwrap();
            let r = s.antican_effectivity();
            assert_eq!(r.class, BiClass::new(-(n as i64 + 1), 1));
            let w = r.witness.unwrap();
            assert_eq!(w.to_string(), "y0");
            assert!(r.effective);
        }
        let s = ConicBundleSpec::family(3, Family::A20 { a: 3 }, f, 0).unwrap();
        let r = s.antican_effectivity();
        assert_eq!(r.class, BiClass::new(-2, 1));
        assert!(r.effective);
        assert_eq!(r.witness.unwrap().to_string(), "x0*y0");
    }

    #[test]
    fn squarefree_detects_square_factor() {
        let f = field();
        let space = SplitBundleSpace::new(3, [1, 1, 0]).unwrap();
        let mut spec = ConicBundleSpec::random(space, 0, f, 5).unwrap();
        let v = indexed_vars("x", 3);
        for slot in [1, 2, 4] {
            spec.sigmas[slot] = MultiPoly::zero(f, v.clone());
        }
        spec.sigmas[3] = spec.sigmas[0].clone();
        let rep = spec.squarefree_check(1, 3).unwrap();
        assert!(!rep.consistent_with_reduced());

        spec.sigmas[5] = MultiPoly::zero(f, v).with_degree(0).unwrap();
        assert_eq!(spec.squarefree_check(1, 3), Err(Error::ZeroDiscriminant));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let s = ConicBundleSpec::family(3, Family::A20 { a: 3 }, field(), 12).unwrap();
        let text = s.to_json();
        let back = ConicBundleSpec::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(ConicBundleSpec::from_json("{}").is_err());
        let s = ConicBundleSpec::family(2, Family::B10 { b: 1 }, field(), 1).unwrap();
        let mut file = s.to_file();
        file.d[0] += 1;
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(ConicBundleSpec::from_json(&text), Err(Error::DegreeChainBroken { .. })));
    }
}
