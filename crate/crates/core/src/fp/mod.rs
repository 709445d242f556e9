//! Dense linear algebra over `Z/p` for primes `p ≤ 251`, with matrix groups
//! and the fixed-line recipe used to build perfect counterexamples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod group;
mod recipe;
mod subspace;

pub use group::MatrixGroup;
pub use recipe::{
    recipe_check, search_recipe, RecipeCandidate, RecipeCheck, RecipeSearch, SearchConfig,
    SearchStrategy, Signature, DEFAULT_PATIENCE, DEFAULT_SEARCH_BUDGET,
};
pub use subspace::FpSubspace;

pub const MAX_PRIME: u32 = 251;
pub const MAX_DIMENSION: usize = 16;

pub fn check_prime(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if prime && p <= MAX_PRIME {
        Ok(())
    } else {
        Err(Error::NonPrimeModulus(p))
    }
}

pub(crate) fn inv_mod(a: u8, p: u32) -> u8 {
    debug_assert!(a != 0);
    // a^(p-2) mod p
    let (mut base, mut exp, mut acc) = (a as u32, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u8
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
pub(crate) fn row_reduce(rows: &mut Vec<Vec<u8>>, p: u32) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv_mod(rows[r][c], p) as u32;
        for x in rows[r].iter_mut() {
            *x = (*x as u32 * s % p) as u8;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c] as u32;
                for j in 0..cols {
                    let sub = f * rows[r][j] as u32 % p;
                    rows[k][j] = ((rows[k][j] as u32 + p - sub) % p) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A dense matrix over `Z/p`, entries stored reduced in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        if rows.len() > MAX_DIMENSION || cols > MAX_DIMENSION {
            return Err(Error::DimensionMismatch(format!(
                "matrices are limited to {MAX_DIMENSION}x{MAX_DIMENSION}"
            )));
        }
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u8).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub(crate) fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        FpMatrix { p, rows, cols, data }
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        FpMatrix { p: self.p, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        assert_eq!(self.p, other.p, "moduli must agree");
        let p = self.p;
        let mut data = vec![0u8; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u32 * other.get(k, j) as u32;
                }
                data[i * other.cols + j] = (acc % p) as u8;
            }
        }
        FpMatrix { p, rows: self.rows, cols: other.cols, data }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let acc: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (acc % self.p) as u8
            })
            .collect()
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.shape(), other.shape());
        let p = self.p;
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| ((a as u32 + p - b as u32) % p) as u8).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// `M − I`.
    pub fn minus_identity(&self) -> FpMatrix {
        self.sub(&FpMatrix::identity(self.p, self.rows))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        row_reduce(&mut rows, self.p).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == FpMatrix::identity(self.p, self.rows)
    }

    /// Kernel and column space, computed by row reduction.
    pub fn kernel_image(&self) -> (FpSubspace, FpSubspace) {
        (self.kernel(), self.image())
    }

    pub fn kernel(&self) -> FpSubspace {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&mut rows, self.p);
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ((p - rows[r][f] as u32) % p) as u8;
                }
                v
            })
            .collect();
        FpSubspace::span(p, self.cols, basis)
    }

    pub fn image(&self) -> FpSubspace {
        let columns = (0..self.cols).map(|j| self.column(j)).collect();
        FpSubspace::span(self.p, self.rows, columns)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(p: u32, cols: usize, parts: &[FpMatrix]) -> FpMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        FpMatrix { p, rows, cols, data }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {:?})", self.p, self.row_vecs())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
