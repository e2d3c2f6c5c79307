//! Dense matrices over `F_p` with exact rank and kernel.

use super::field::{Fp, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

/// Outcome of [`ExactMatrix::rank_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInfo {
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<Fp>>,
}

impl ExactMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, entries: vec![Fp::ZERO; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fp::ONE);
        }
        m
    }

    /// Row-major constructor. Panics if `entries.len() != rows * cols`.
    pub fn from_rows(field: PrimeField, rows: usize, cols: usize, entries: Vec<Fp>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must be rows * cols");
        ExactMatrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fp) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fp] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fp::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank only; skips building the kernel basis.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Gaussian elimination over `F_p`. Every returned kernel vector `v`
    /// satisfies `self * v = 0`, and `rank + kernel_dim = cols`.
    pub fn rank_kernel(&self) -> KernelInfo {
        let mut work = self.clone();
        let pivots = work.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let kernel_basis: Vec<Vec<Fp>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fp::ZERO; self.cols];
                v[free] = Fp::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(work.get(row, free));
                }
                v
            })
            .collect();
        KernelInfo { rank: pivots.len(), kernel_dim: kernel_basis.len(), kernel_basis }
    }
}
