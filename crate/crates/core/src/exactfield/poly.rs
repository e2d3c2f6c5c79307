//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration
//! order (and therefore serialization) is deterministic. A polynomial may
//! carry a homogeneity tag: when present, every term has that total degree.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use super::field::{Fp, PrimeField};

/// One `(exponents, coefficient)` pair, the on-disk form of a term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coefficient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Fp>,
    degree: Option<u32>,
}

/// `x0, x1, ..., x{n-1}`.
pub fn indexed_vars(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// All exponent vectors of length `nvars` with total degree `degree`, in
/// lexicographic order.
pub fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

impl MultiPoly {
    pub fn zero(field: PrimeField, vars: Vec<String>) -> Self {
        MultiPoly { field, vars, terms: BTreeMap::new(), degree: None }
    }

    pub fn constant(field: PrimeField, vars: Vec<String>, c: Fp) -> Self {
        let n = vars.len();
        Self::monomial(field, vars, vec![0; n], c)
    }

    pub fn monomial(field: PrimeField, vars: Vec<String>, exponents: Vec<u32>, c: Fp) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(field: PrimeField, vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(field, vars, e, Fp::ONE)
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(field: PrimeField, vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Fp)>,
    {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::MalformedSpec(format!(
                    "exponent vector {e:?} has length {}, expected {}",
                    e.len(),
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Parses serialized terms; coefficients must already be reduced.
    pub fn from_serialized(field: PrimeField, vars: Vec<String>, terms: &[Term]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c = field.checked(t.coefficient).ok_or_else(|| {
                Error::MalformedSpec(format!("coefficient {} not reduced mod {}", t.coefficient, field.modulus()))
            })?;
            if c.is_zero() {
                return Err(Error::MalformedSpec("stored zero coefficient".into()));
            }
            out.push((t.exponents.clone(), c));
        }
        let p = Self::from_terms(field, vars, out)?;
        if p.terms.len() != terms.len() {
            return Err(Error::MalformedSpec("duplicate exponent vectors".into()));
        }
        Ok(p)
    }

    pub fn to_serialized(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, c)| Term { exponents: e.clone(), coefficient: c.value() })
            .collect()
    }

    /// Uniformly random homogeneous polynomial of the given degree: every
    /// monomial gets an independent uniform coefficient.
    pub fn random_homogeneous<R: Rng + ?Sized>(
        field: PrimeField,
        vars: Vec<String>,
        degree: u32,
        rng: &mut R,
    ) -> Self {
        let n = vars.len();
        let mut p = Self::zero(field, vars);
        for e in exponents_of_degree(n, degree) {
            let c = field.random(rng);
            p.add_term(e, c);
        }
        p.degree = Some(degree);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Fp) {
        if c.is_zero() {
            return;
        }
        let f = self.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Fp)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Fp {
        self.terms.get(exponents).copied().unwrap_or(Fp::ZERO)
    }

    /// Declared homogeneous degree, if tagged.
    pub fn degree_tag(&self) -> Option<u32> {
        self.degree
    }

    /// Tags the polynomial as homogeneous of `degree`, verifying every term.
    pub fn with_degree(mut self, degree: u32) -> Result<Self> {
        if !self.is_homogeneous_of(degree) {
            return Err(Error::NonHomogeneous { index: 0, degree });
        }
        self.degree = Some(degree);
        Ok(self)
    }

    /// Maximum total degree over the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    /// The common total degree of all terms. The zero polynomial has none.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.is_homogeneous_of(d).then_some(d)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() });
        }
        debug_assert_eq!(self.field, other.field);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) if a != b => return Err(Error::DegreeMismatch { left: a, right: b }),
            (Some(a), _) | (_, Some(a)) => Some(a),
            _ => None,
        };
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out.degree = degree;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = f.neg(*c);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> Self {
        let f = self.field;
        let mut out = Self::zero(self.field, self.vars.clone());
        out.degree = self.degree;
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), f.mul(*v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let f = self.field;
        let mut out = Self::zero(self.field, self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, f.mul(*ca, *cb));
            }
        }
        out.degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.field, self.vars.clone(), Fp::ONE);
        if self.degree.is_some() {
            acc.degree = Some(0);
        }
        for _ in 0..k {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    /// Iterated formal partial derivative `d^order / d(var)^order`.
    pub fn partial(&self, var: usize, order: u32) -> Result<Self> {
        if var >= self.vars.len() {
            return Err(Error::UnknownVariable(var));
        }
        let f = self.field;
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            let k = e[var];
            if k < order {
                continue;
            }
            let mult = f.falling_factorial(k as u64, order as u64);
            let mut ne = e.clone();
            ne[var] = k - order;
            out.add_term(ne, f.mul(*c, mult));
        }
        out.degree = self.degree.and_then(|d| d.checked_sub(order));
        Ok(out)
    }

    pub fn eval(&self, point: &[Fp]) -> Fp {
        assert_eq!(point.len(), self.vars.len(), "evaluation point dimension");
        let f = self.field;
        let mut acc = Fp::ZERO;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(t, f.pow(*x, k as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable list, which becomes the variable list of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        for img in images {
            if img.vars != target_vars {
                return Err(Error::VariableMismatch { left: target_vars.clone(), right: img.vars.clone() });
            }
        }
        // powers[i][k] = images[i]^k, filled lazily up to the largest exponent
        let one = MultiPoly::constant(self.field, target_vars.clone(), Fp::ONE);
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![one]; images.len()];
        for (i, img) in images.iter().enumerate() {
            let max_k = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            for k in 1..=max_k as usize {
                let next = powers[i][k - 1].mul(img)?;
                powers[i].push(next);
            }
        }
        let mut out = Self::zero(self.field, target_vars.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(self.field, target_vars.clone(), *c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize])?;
                }
            }
            for (te, tc) in t.terms {
                out.add_term(te, tc);
            }
        }
        out.degree = self.degree;
        if out.degree.is_some() && !images.iter().all(|p| p.homogeneous_degree() == Some(1) || p.is_zero()) {
            out.degree = None;
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.value() == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
