//! Intersection theory on Hirzebruch surfaces `F_e` blown up at marked points.
//!
//! Classes are written `a C0 + b F - sum m_i E_i`. The intersection form is
//! `C0^2 = -e`, `C0.F = 1`, `F^2 = 0`, `E_i^2 = -1`, with the `E_i` orthogonal
//! to everything else. Blown-up points are abstract markers that only record
//! whether the point lies on the negative section `C0`; all blown-up points
//! are assumed to lie in distinct fibers.
//!
//! Elementary transformations are exposed one marker at a time. Centering at
//! marker `i` re-reads the same blown-up surface as a blow-up of `F_{e'}`:
//! the strict transform of the fiber through the point, `F - E_i`, becomes
//! the new exceptional curve `E'_i`. The basis change is
//!
//! | point       | `e'`  | `C0`              | `F`  | `E_i`       |
//! |-------------|-------|-------------------|------|-------------|
//! | off `C0`    | `e-1` | `C0' - E'_i`      | `F'` | `F' - E'_i` |
//! | on `C0`     | `e+1` | `C0' + F' - E'_i` | `F'` | `F' - E'_i` |
//!
//! and the image point lies on `C0'` exactly when the original did not.
//! Other markers keep their flags.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marker {
    pub on_c0: bool,
}

impl Marker {
    pub const ON_C0: Marker = Marker { on_c0: true };
    pub const GENERAL: Marker = Marker { on_c0: false };
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub e: u32,
    pub markers: Vec<Marker>,
}

/// `a C0 + b F - sum m_i E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivClass {
    pub a: i64,
    pub b: i64,
    pub m: Vec<i64>,
}

impl DivClass {
    pub fn new(a: i64, b: i64, m: Vec<i64>) -> Self {
        DivClass { a, b, m }
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        assert_eq!(self.m.len(), other.m.len(), "marker counts differ");
        DivClass {
            a: self.a + other.a,
            b: self.b + other.b,
            m: self.m.iter().zip(&other.m).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> DivClass {
        DivClass { a: k * self.a, b: k * self.b, m: self.m.iter().map(|x| k * x).collect() }
    }

    pub fn neg(&self) -> DivClass {
        self.scale(-1)
    }

    /// Coordinates in the basis `(C0, F, E_1, ..., E_d)`.
    pub fn coords(&self) -> Vec<i64> {
        let mut v = vec![self.a, self.b];
        v.extend(self.m.iter().map(|x| -x));
        v
    }

    pub fn from_coords(v: &[i64]) -> DivClass {
        DivClass { a: v[0], b: v[1], m: v[2..].iter().map(|x| -x).collect() }
    }
}

impl MarkedSurface {
    pub fn hirzebruch(e: u32) -> Self {
        MarkedSurface { e, markers: Vec::new() }
    }

    pub fn new(e: u32, markers: Vec<Marker>) -> Self {
        MarkedSurface { e, markers }
    }

    /// `F_e` blown up at `d` points, none on `C0`.
    pub fn general_blowup(e: u32, d: usize) -> Self {
        MarkedSurface { e, markers: vec![Marker::GENERAL; d] }
    }

    pub fn num_markers(&self) -> usize {
        self.markers.len()
    }

    /// Rank of the Picard lattice, `d + 2`.
    pub fn rank(&self) -> usize {
        self.markers.len() + 2
    }

    pub fn class(&self, a: i64, b: i64) -> DivClass {
        DivClass::new(a, b, vec![0; self.markers.len()])
    }

    pub fn c0(&self) -> DivClass {
        self.class(1, 0)
    }

    pub fn fiber(&self) -> DivClass {
        self.class(0, 1)
    }

    pub fn exceptional(&self, i: usize) -> DivClass {
        let mut c = self.class(0, 0);
        c.m[i] = -1;
        c
    }

    fn check(&self, d: &DivClass) -> Result<()> {
        if d.m.len() != self.markers.len() {
            return Err(Error::MarkerCountMismatch { expected: self.markers.len(), got: d.m.len() });
        }
        Ok(())
    }

    pub fn intersect(&self, d1: &DivClass, d2: &DivClass) -> Result<i64> {
        self.check(d1)?;
        self.check(d2)?;
        let e = self.e as i64;
        let base = -e * d1.a * d2.a + d1.a * d2.b + d1.b * d2.a;
        let exc: i64 = d1.m.iter().zip(&d2.m).map(|(x, y)| x * y).sum();
        Ok(base - exc)
    }

    pub fn self_intersection(&self, d: &DivClass) -> Result<i64> {
        self.intersect(d, d)
    }

    /// `K = -2 C0 - (e+2) F + sum E_i`.
    pub fn canonical_class(&self) -> DivClass {
        DivClass::new(-2, -(self.e as i64 + 2), vec![-1; self.markers.len()])
    }

    pub fn anticanonical_class(&self) -> DivClass {
        self.canonical_class().neg()
    }

    /// Arithmetic genus `1 + D.(D+K)/2`.
    pub fn adjunction_genus(&self, d: &DivClass) -> Result<i64> {
        let k = self.canonical_class();
        let dk = self.intersect(d, &d.add(&k))?;
        debug_assert!(dk % 2 == 0, "D.(D+K) is even on these lattices");
        Ok(1 + dk / 2)
    }

    /// Arithmetic genus minus the number of imposed ordinary nodes.
    pub fn geometric_genus(&self, d: &DivClass, nodes: u32) -> Result<i64> {
        Ok(self.adjunction_genus(d)? - nodes as i64)
    }

    /// `-K + (n-2) F`.
    pub fn twist_class(&self, n: i64) -> Result<DivClass> {
        if n < 2 {
            return Err(Error::TwistTooSmall(n));
        }
        Ok(self.anticanonical_class().add(&self.fiber().scale(n - 2)))
    }

    /// Gram matrix in the basis `(C0, F, E_1, ..., E_d)`.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut g = vec![vec![0i64; r]; r];
        g[0][0] = -(self.e as i64);
        g[0][1] = 1;
        g[1][0] = 1;
        for (i, row) in g.iter_mut().enumerate().skip(2) {
            row[i] = -1;
        }
        g
    }

    /// Elementary transformation centered at marker `index`.
    pub fn elm_at(&self, index: usize) -> Result<(MarkedSurface, LatticeMap)> {
        let count = self.markers.len();
        if index >= count {
            return Err(Error::MarkerOutOfRange { index, count });
        }
        let on_c0 = self.markers[index].on_c0;
        let e_new = if on_c0 { self.e as i64 + 1 } else { self.e as i64 - 1 };
        if e_new < 0 {
            return Err(Error::NegativeHirzebruch(e_new));
        }
        let r = self.rank();
        let ei = 2 + index;
        let mut map = LatticeMap::identity(r);
        // column j holds the image of basis vector j
        map.columns[0] = unit(r, 0);
        map.columns[0][ei] = -1;
        if on_c0 {
            map.columns[0][1] = 1;
        }
        map.columns[ei] = unit(r, 1);
        map.columns[ei][ei] = -1;
        let mut markers = self.markers.clone();
        markers[index] = Marker { on_c0: !on_c0 };
        Ok((MarkedSurface { e: e_new as u32, markers }, map))
    }

    /// Blows up a fresh point (on or off `C0`) in a new fiber and performs
    /// the elementary transformation centered there. The returned map has the
    /// blown-up surface, with the new marker last, as its domain.
    pub fn elm(&self, marker_on_c0: bool) -> Result<(MarkedSurface, LatticeMap)> {
        let mut blown = self.clone();
        blown.markers.push(Marker { on_c0: marker_on_c0 });
        blown.elm_at(blown.markers.len() - 1)
    }
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// An integer linear map between Picard lattices given by the images of the
/// basis vectors `(C0, F, E_1, ..., E_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    columns: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(r: usize) -> Self {
        LatticeMap { columns: (0..r).map(|i| unit(r, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn image_of_basis(&self, j: usize) -> &[i64] {
        &self.columns[j]
    }

    pub fn apply_coords(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![0; self.dim()];
        for (j, &x) in v.iter().enumerate() {
            for (o, &c) in out.iter_mut().zip(&self.columns[j]) {
                *o += x * c;
            }
        }
        out
    }

    pub fn apply(&self, d: &DivClass) -> DivClass {
        DivClass::from_coords(&self.apply_coords(&d.coords()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LatticeMap) -> LatticeMap {
        LatticeMap { columns: self.columns.iter().map(|c| next.apply_coords(c)).collect() }
    }

    /// Checks `M^T G_target M = G_source` entrywise.
    pub fn is_isometry(&self, source: &[Vec<i64>], target: &[Vec<i64>]) -> bool {
        let r = self.dim();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let (ci, cj) = (&self.columns[i], &self.columns[j]);
                let mut s = 0;
                for k in 0..r {
                    for l in 0..r {
                        s += ci[k] * target[k][l] * cj[l];
                    }
                }
                s == source[i][j]
            })
        })
    }
}

/// Signature `(positive, negative, zero)` of a symmetric integer matrix,
/// computed by exact congruence diagonalization over the rationals.
pub fn signature(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Ratio<i128>>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x as i128)).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j makes the pivot 2 a[k][j]
                let src = a[j].clone();
                for (dst, v) in a[k].iter_mut().zip(src) {
                    *dst += v;
                }
                for row in a.iter_mut() {
                    let v = row[j];
                    row[k] += v;
                }
            }
        }
        let p = a[k][k];
        if p.is_zero() {
            zero += 1;
            k += 1;
            continue;
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let factor = a[i][k] / p;
            if factor.is_zero() {
                continue;
            }
            let pivot_row = a[k].clone();
            for (dst, v) in a[i].iter_mut().zip(pivot_row).skip(k) {
                *dst -= factor * v;
            }
            for row in a.iter_mut() {
                let v = row[k];
                row[i] -= factor * v;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

/// Numerics of `-K_S + r F` on a conic bundle surface whose discriminant has
/// degree `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRayNumerics {
    pub delta: u32,
    pub r: i64,
    pub square: i64,
    pub fiber_deg: i64,
    pub negative_square: bool,
    pub nef_boundary: bool,
}

/// Computed on `F_0` blown up at `delta` points in distinct fibers, which is
/// the class-level model of such a surface.
pub fn two_ray_numerics(delta: u32, r: i64) -> TwoRayNumerics {
    let s = MarkedSurface::general_blowup(0, delta as usize);
    let d = s.anticanonical_class().add(&s.fiber().scale(r));
    let square = s.self_intersection(&d).expect("class built on s");
    let fiber_deg = s.intersect(&d, &s.fiber()).expect("class built on s");
    TwoRayNumerics { delta, r, square, fiber_deg, negative_square: square < 0, nef_boundary: square == 0 }
}
