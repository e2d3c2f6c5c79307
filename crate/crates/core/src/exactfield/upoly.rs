//! Dense univariate polynomials over `F_p`, just enough for a squarefree test.

use crate::error::{Error, Result};
use super::field::{Fp, PrimeField};
use super::poly::MultiPoly;

/// Coefficients stored low degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Fp>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.elem(i as u64)))
            .collect();
        Self::new(f, c)
    }

    fn lead(&self) -> Fp {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let inv = f.inv(d.lead()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        while r.len() > dd && !r.is_empty() {
            let top = *r.last().unwrap();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let q = f.mul(top, inv);
            let shift = r.len() - 1 - dd;
            for (i, &c) in d.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(q, c));
            }
            r.pop();
        }
        Self::new(f, r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let f = self.field;
        let inv = f.inv(a.lead()).unwrap();
        let c = a.coeffs.iter().map(|&c| f.mul(c, inv)).collect();
        Self::new(f, c)
    }

    /// True iff `gcd(f, f')` is a constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }
}

/// Squarefree test for a binary form `f(s, t)`: the dehomogenization at
/// `t = 1` must be squarefree and `t^2` must not divide `f`.
pub fn binary_form_squarefree(form: &MultiPoly) -> Result<bool> {
    assert_eq!(form.num_vars(), 2, "binary form");
    let deg = form.homogeneous_degree().ok_or(Error::ZeroPolynomial)? as usize;
    let mut coeffs = vec![Fp::ZERO; deg + 1];
    for (e, c) in form.terms() {
        coeffs[e[0] as usize] = c;
    }
    let g = UniPoly::new(form.field(), coeffs);
    let root_at_infinity = deg - g.degree().expect("nonzero form");
    Ok(root_at_infinity <= 1 && g.is_squarefree()?)
}
