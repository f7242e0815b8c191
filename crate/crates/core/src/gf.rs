//! Exact dense linear algebra over a prime field GF(p).
//!
//! Everything else in the crate is built on this: hom-spaces are nullspaces,
//! kernels and cokernels are subspace computations, and every basis handed
//! out is in reduced echelon form so results are reproducible run to run.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field, identified by its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // products are formed in u64, so p must fit comfortably in 32 bits
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = u32;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod p.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Contract(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        let p = field.p();
        Ok(Mat {
            rows,
            cols,
            field,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    /// Builds a matrix from signed rows; all rows must have equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::Contract("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.reduce(x)))
            .collect();
        Ok(Mat {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(field: PrimeField, rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for (i, &x) in v.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vecs(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for v in rows {
            assert_eq!(v.len(), cols, "row length mismatch");
            data.extend_from_slice(v);
        }
        Mat {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.p() as u64;
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                    if *slot >= 1 << 62 {
                        *slot %= p;
                    }
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| (a as u64 * b as u64) % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(self.field.neg(1 % self.field.p()))
    }

    /// `self + s * other`, in place.
    pub fn axpy(&mut self, s: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    /// Flattens row-major into a vector (used to coordinatize hom-spaces).
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, v: Vec<u32>) -> Mat {
        assert_eq!(v.len(), rows * cols);
        Mat {
            rows,
            cols,
            field,
            data: v,
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut m = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    /// Selects the given columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m[(r, j)] = self[(r, c)];
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Mat {
            rows: rows.len(),
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let v = &mut self.data[r * cols + k];
                    *v = f.mul(*v, inv);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor != 0 {
                    let nf = f.neg(factor);
                    for k in c..cols {
                        if prow[k] != 0 {
                            row[k] = f.add(row[k], f.mul(nf, prow[k]));
                        }
                    }
                }
            };
            head.chunks_mut(cols).for_each(eliminate);
            rest.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns (increasing).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right nullspace {x : A x = 0}.
    ///
    /// One vector per free column, with a 1 in that column; the basis is
    /// therefore determined by the rref and independent of the input's row order.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, piv) = self.rref();
        nullspace_from_rref(&r, &piv)
    }

    /// Solves `A x = b`; returns a particular solution and a nullspace basis.
    pub fn solve(&self, b: &[u32]) -> Result<Option<(Vec<u32>, Vec<Vec<u32>>)>> {
        if b.len() != self.rows {
            return Err(Error::Contract(format!(
                "solve: right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let aug = self.hstack(&Mat::from_cols(f, self.rows, &[b.to_vec()]));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x0 = vec![0u32; self.cols];
        for (i, &c) in piv.iter().enumerate() {
            x0[c] = r[(i, self.cols)];
        }
        let coeff = r.block(0, 0, r.rows, self.cols);
        Ok(Some((x0, nullspace_from_rref(&coeff, &piv))))
    }

    /// Solves `A X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve_matrix row mismatch");
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (i, &c) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = r[(i, self.cols + j)];
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_matrix(&Mat::identity(self.field, n))?;
        // solve_matrix only guarantees a right inverse when rank is full
        if self.mul(&x) == Mat::identity(self.field, n) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `A^k` for square A.
    pub fn pow(&self, k: usize) -> Mat {
        assert!(self.is_square());
        let mut r = Mat::identity(self.field, self.rows);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }
}

fn nullspace_from_rref(r: &Mat, piv: &[usize]) -> Vec<Vec<u32>> {
    let f = r.field;
    let cols = r.cols;
    let mut is_piv = vec![false; cols];
    for &c in piv {
        is_piv[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_piv[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1 % f.p();
        for (i, &c) in piv.iter().enumerate() {
            v[c] = f.neg(r[(i, free)]);
        }
        basis.push(v);
    }
    basis
}

/// A linear subspace of GF(p)^n held as a canonical (reduced echelon) basis.
///
/// Two subspaces are equal iff their canonical bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    field: PrimeField,
    /// rref rows, no zero rows
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: PrimeField, ambient: usize) -> Subspace {
        let id = Mat::identity(field, ambient);
        Subspace {
            ambient,
            field,
            basis: (0..ambient).map(|r| id.row(r).to_vec()).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_row_vecs(field, ambient, vectors);
        let (r, piv) = m.rref();
        Subspace {
            ambient,
            field,
            basis: (0..piv.len()).map(|i| r.row(i).to_vec()).collect(),
            pivots: piv,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let f = self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, self.ambient);
        }
        // a·A = b·B  <=>  (a, -b) in left nullspace of [A; B]
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|&x| f.neg(x)).collect()));
        let m = Mat::from_cols(f, self.ambient, &cols);
        let vecs: Vec<Vec<u32>> = m
            .nullspace()
            .into_iter()
            .map(|coef| self.combine(&coef[..self.dim()]))
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coef: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.ambient];
        for (c, v) in coef.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(v) {
                *o = f.add(*o, f.mul(*c, x));
            }
        }
        out
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field;
        let coef: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let w = self.combine(&coef);
        if w.iter().zip(v).all(|(a, b)| a == b) {
            Some(coef)
        } else {
            let _ = f;
            None
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Reduces `v` modulo the subspace: the unique representative with zeros
    /// in all pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                let na = f.neg(a);
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(na, y));
                }
            }
        }
        w
    }

    /// Standard basis vectors on the non-pivot columns; they map to a basis of
    /// the quotient space ambient / self.
    pub fn complement_reps(&self) -> Vec<Vec<u32>> {
        let mut is_piv = vec![false; self.ambient];
        for &c in &self.pivots {
            is_piv[c] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_piv[c])
            .map(|c| {
                let mut e = vec![0u32; self.ambient];
                e[c] = 1 % self.field.p();
                e
            })
            .collect()
    }

    /// Non-pivot column indices, i.e. quotient coordinates.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.ambient];
        for &c in &self.pivots {
            is_piv[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_piv[c]).collect()
    }
}

/// Enumerates every vector of GF(p)^n in lexicographic order (little-endian
/// counter), calling `visit` until it returns `false`.
pub fn for_each_vector(field: PrimeField, n: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    let p = field.p();
    let mut v = vec![0u32; n];
    loop {
        if !visit(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            v[i] += 1;
            if v[i] == p {
                v[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// `p^n`, saturating.
pub fn space_size(field: PrimeField, n: usize) -> u128 {
    let mut s: u128 = 1;
    for _ in 0..n {
        s = s.saturating_mul(field.p() as u128);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_non_prime() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn rref_identity_and_repeated_rows() {
        let f = gf(2);
        let id = Mat::identity(f, 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let m = Mat::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(r, Mat::from_rows(f, &[vec![1, 1], vec![0, 0]]).unwrap());
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_all_ones_gf3() {
        let f = gf(3);
        let m = Mat::from_rows(f, &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r.row(0), &[1, 1, 1]);
        assert!(r.row(1).iter().chain(r.row(2)).all(|&x| x == 0));
    }

    #[test]
    fn solve_examples() {
        let f = gf(2);
        let id = Mat::identity(f, 2);
        let (x0, ns) = id.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(x0, vec![1, 0]);
        assert!(ns.is_empty());

        let z = Mat::zeros(f, 2, 2);
        let (x0, ns) = z.solve(&[0, 0]).unwrap().unwrap();
        assert_eq!(x0, vec![0, 0]);
        assert_eq!(ns, vec![vec![1, 0], vec![0, 1]]);

        // enumerate all four vectors of GF(2)^2 as the oracle
        let a = Mat::from_rows(f, &[vec![1, 1]]).unwrap();
        let mut sols = Vec::new();
        for_each_vector(f, 2, |v| {
            if a.mul_vec(v) == vec![1] {
                sols.push(v.to_vec());
            }
            true
        });
        assert_eq!(sols, vec![vec![1, 0], vec![0, 1]]);
        let (x0, ns) = a.solve(&[1]).unwrap().unwrap();
        assert_eq!(x0, vec![1, 0]);
        assert_eq!(ns, vec![vec![1, 1]]);

        assert!(a.solve(&[1, 0]).is_err());
        assert!(z.solve(&[1, 0]).unwrap().is_none());
    }

    #[test]
    fn subspace_examples() {
        let f = gf(2);
        let a = Subspace::span(f, 2, &[vec![1, 0]]);
        let b = Subspace::span(f, 2, &[vec![0, 1]]);
        assert_eq!(a.sum(&b), Subspace::whole(f, 2));
        assert_eq!(a.intersection(&b).dim(), 0);
        assert!(a.complement_reps().len() == 1);
        assert!(Subspace::whole(f, 2).complement_reps().is_empty());
        let diag = Subspace::span(f, 2, &[vec![1, 1]]);
        let reps = diag.complement_reps();
        assert_eq!(reps.len(), 1);
        assert!(!diag.contains(&reps[0]));
        assert!(diag.contains(&[1, 1]));
        assert!(!diag.contains(&[1, 0]));
    }

    #[test]
    fn intersection_gf5() {
        let f = gf(5);
        let a = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(f, 3, &[vec![1, 1, 1], vec![0, 1, 1]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[1, 0, 0]));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(3);
        let m = Mat::from_rows(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f, 2));
        assert!(Mat::zeros(f, 2, 2).inverse().is_none());
    }

    fn arb_mat() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (prop_oneof![Just(2u32), Just(3u32), Just(5u32)], 1usize..6, 1usize..6).prop_flat_map(
            |(p, r, c)| (Just(p), Just(r), Just(c), prop::collection::vec(0..p, r * c)),
        )
    }

    proptest! {
        #[test]
        fn rank_nullity_and_idempotence((p, r, c, data) in arb_mat()) {
            let f = gf(p);
            let a = Mat::from_data(f, r, c, data).unwrap();
            let (rr, piv) = a.rref();
            prop_assert_eq!(piv.len() + a.nullspace().len(), c);
            prop_assert_eq!(rr.rref().0, rr.clone());
            for n in a.nullspace() {
                prop_assert!(a.mul_vec(&n).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn canonical_basis_is_unique((p, r, c, data) in arb_mat(), mix in prop::collection::vec(0u32..5, 36)) {
            let f = gf(p);
            let a = Mat::from_data(f, r, c, data).unwrap();
            let rows: Vec<Vec<u32>> = (0..r).map(|i| a.row(i).to_vec()).collect();
            // random recombination of the rows spans the same space only if invertible
            let mut mixm = Mat::zeros(f, r, r);
            for i in 0..r { for j in 0..r { mixm[(i, j)] = mix[i * 6 + j] % p; } }
            if mixm.is_invertible() {
                let b = mixm.mul(&a);
                let rows_b: Vec<Vec<u32>> = (0..r).map(|i| b.row(i).to_vec()).collect();
                prop_assert_eq!(Subspace::span(f, c, &rows), Subspace::span(f, c, &rows_b));
            }
        }

        #[test]
        fn solve_is_correct((p, r, c, data) in arb_mat(), rhs in prop::collection::vec(0u32..5, 6)) {
            let f = gf(p);
            let a = Mat::from_data(f, r, c, data).unwrap();
            let b: Vec<u32> = rhs[..r].iter().map(|x| x % p).collect();
            if let Some((x0, ns)) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x0), b);
                for n in ns { prop_assert!(a.mul_vec(&n).iter().all(|&x| x == 0)); }
            }
        }
    }
}
