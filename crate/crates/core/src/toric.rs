//! The projective bundle `P(O(a0) + O(a1) + O(a2))` over `P^{n-1}` through
//! its Cox ring `k[x_0..x_{n-1}, y_0, y_1, y_2]`, and section counts on
//! Hirzebruch surfaces.
//!
//! Cox variables are graded by `(H1, H2)`: each `x_i` has degree `(1, 0)` and
//! `y_j` has degree `(-a_j, 1)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::{fmt, ops};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitBundleSpace {
    n: u32,
    a: [u32; 3],
}

/// A class `alpha H1 + beta H2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiClass {
    pub alpha: i64,
    pub beta: i64,
}

impl BiClass {
    pub const fn new(alpha: i64, beta: i64) -> Self {
        BiClass { alpha, beta }
    }
}

impl ops::Add for BiClass {
    type Output = BiClass;
    fn add(self, o: BiClass) -> BiClass {
        BiClass::new(self.alpha + o.alpha, self.beta + o.beta)
    }
}

impl ops::Sub for BiClass {
    type Output = BiClass;
    fn sub(self, o: BiClass) -> BiClass {
        BiClass::new(self.alpha - o.alpha, self.beta - o.beta)
    }
}

impl fmt::Display for BiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Membership of a class in the nef and effective cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMembership {
    pub nef: bool,
    pub effective: bool,
}

impl SplitBundleSpace {
    pub fn new(n: u32, a: [u32; 3]) -> Result<Self> {
        if n < 2 || a[0] < a[1] || a[1] < a[2] {
            return Err(Error::InvalidSpace { n, a: a.map(i64::from) });
        }
        Ok(SplitBundleSpace { n, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> [u32; 3] {
        self.a
    }

    pub fn a_sum(&self) -> i64 {
        self.a.iter().map(|&x| x as i64).sum()
    }

    /// Degree of `x^u y^v`.
    pub fn grading_of_monomial(&self, x_exps: &[u32], y_exps: [u32; 3]) -> BiClass {
        assert_eq!(x_exps.len(), self.n as usize, "one exponent per base variable");
        let xs: i64 = x_exps.iter().map(|&u| u as i64).sum();
        let ys: i64 = y_exps.iter().zip(self.a).map(|(&v, a)| (v * a) as i64).sum();
        let vs: i64 = y_exps.iter().map(|&v| v as i64).sum();
        BiClass::new(xs - ys, vs)
    }

    /// Number of Cox monomials of degree `c`, i.e. `h^0(O(alpha H1 + beta H2))`.
    pub fn h0(&self, c: BiClass) -> BigUint {
        if c.beta < 0 {
            return BigUint::zero();
        }
        let k = self.n as u64 - 1;
        let mut total = BigUint::zero();
        let beta = c.beta as u64;
        for v0 in 0..=beta {
            for v1 in 0..=beta - v0 {
                let v2 = beta - v0 - v1;
                let xdeg = c.alpha
                    + (self.a[0] as u64 * v0 + self.a[1] as u64 * v1 + self.a[2] as u64 * v2) as i64;
                if xdeg >= 0 {
                    total += binomial(xdeg as u64 + k, k);
                }
            }
        }
        total
    }

    /// Nef cone is spanned by `(1,0)` and `(-a2,1)`; effective cone by
    /// `(1,0)` and `(-a0,1)`.
    pub fn cone_tests(&self, c: BiClass) -> ConeMembership {
        let in_cone = |slope: u32| c.beta >= 0 && c.alpha + slope as i64 * c.beta >= 0;
        ConeMembership { nef: in_cone(self.a[2]), effective: in_cone(self.a[0]) }
    }

    /// `-K = (n - a0 - a1 - a2) H1 + 3 H2`.
    pub fn anticanonical(&self) -> BiClass {
        BiClass::new(self.n as i64 - self.a_sum(), 3)
    }

    /// Anticanonical class of a hypersurface of class `hyp`, by adjunction.
    pub fn anticanonical_of_hypersurface(&self, hyp: BiClass) -> BiClass {
        self.anticanonical() - hyp
    }
}

/// Exact `binom(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `h^0(F_e, a C0 + b F)`: zero outside the effective cone, `(a+1)(b+1)` on
/// `F_0`, and `sum_{i=0}^{min(a, b/e)} (b - i e + 1)` for `e >= 1`.
pub fn hirzebruch_h0(e: u32, a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 {
        return 0;
    }
    if e == 0 {
        return ((a + 1) * (b + 1)) as u64;
    }
    let e = e as i64;
    let top = a.min(b / e);
    (0..=top).map(|i| (b - i * e + 1) as u64).sum()
}
