//! Exact dense linear algebra over the prime field F_p.
//!
//! Vectors are stored as packed 64-bit words when `p = 2` and as one byte per
//! coordinate otherwise. [`RowSpace`] keeps its rows in reduced row echelon
//! form, so reducing a new vector costs one `axpy` per pivot column the vector
//! touches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

/// A dense vector over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVec {
    p: u32,
    len: usize,
    repr: Repr,
}

impl FpVec {
    pub fn zero(p: u32, len: usize) -> Self {
        let repr = if p == 2 {
            Repr::Bits(vec![0; len.div_ceil(64)])
        } else {
            Repr::Bytes(vec![0; len])
        };
        FpVec { p, len, repr }
    }

    /// Builds a vector from arbitrary integer coordinates, reducing mod p.
    pub fn from_slice(p: u32, coords: &[u32]) -> Self {
        let mut v = FpVec::zero(p, coords.len());
        for (i, &c) in coords.iter().enumerate() {
            v.set(i, c % p);
        }
        v
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = FpVec::zero(p, len);
        v.set(i, 1);
        v
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        match &self.repr {
            Repr::Bits(w) => ((w[i / 64] >> (i % 64)) & 1) as u32,
            Repr::Bytes(b) => b[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u32) {
        debug_assert!(i < self.len);
        let value = value % self.p;
        match &mut self.repr {
            Repr::Bits(w) => {
                let mask = 1u64 << (i % 64);
                if value == 1 {
                    w[i / 64] |= mask;
                } else {
                    w[i / 64] &= !mask;
                }
            }
            Repr::Bytes(b) => b[i] = value as u8,
        }
    }

    /// Adds `value` (mod p) to coordinate `i`.
    #[inline]
    pub fn add_at(&mut self, i: usize, value: u32) {
        let cur = self.get(i);
        self.set(i, (cur + value % self.p) % self.p);
    }

    pub fn to_vec(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Bits(w) => w.iter().all(|&x| x == 0),
            Repr::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        match &self.repr {
            Repr::Bits(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(k, &x)| k * 64 + x.trailing_zeros() as usize),
            Repr::Bytes(b) => b.iter().position(|&x| x != 0),
        }
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        match &self.repr {
            Repr::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Repr::Bytes(b) => b.iter().filter(|&&x| x != 0).count(),
        }
    }

    pub fn scale(&mut self, c: u32) {
        let c = c % self.p;
        match &mut self.repr {
            Repr::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Repr::Bytes(b) => {
                let p = self.p;
                b.iter_mut().for_each(|x| *x = ((*x as u32 * c) % p) as u8);
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: u32, other: &FpVec) {
        debug_assert_eq!(self.len, other.len);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match (&mut self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => {
                a.iter_mut().zip(b).for_each(|(x, y)| *x ^= *y);
            }
            (Repr::Bytes(a), Repr::Bytes(b)) => {
                let p = self.p as u8;
                if c == 1 {
                    for (x, &y) in a.iter_mut().zip(b) {
                        let t = *x + y;
                        *x = t.min(t.wrapping_sub(p));
                    }
                } else {
                    let mut table = [0u8; 256];
                    for (y, slot) in table.iter_mut().enumerate().take(self.p as usize) {
                        *slot = ((y as u32 * c) % self.p) as u8;
                    }
                    for (x, &y) in a.iter_mut().zip(b) {
                        let t = *x + table[y as usize];
                        *x = t.min(t.wrapping_sub(p));
                    }
                }
            }
            _ => unreachable!("mixed representations for the same prime"),
        }
    }

    pub fn add(&self, other: &FpVec) -> FpVec {
        let mut out = self.clone();
        out.axpy(1, other);
        out
    }

    pub fn dot(&self, other: &FpVec) -> u32 {
        debug_assert_eq!(self.len, other.len);
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => {
                a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2
            }
            (Repr::Bytes(a), Repr::Bytes(b)) => {
                let mut acc = 0u64;
                for (&x, &y) in a.iter().zip(b) {
                    acc += x as u64 * y as u64;
                }
                (acc % self.p as u64) as u32
            }
            _ => unreachable!("mixed representations for the same prime"),
        }
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &FpVec) -> FpVec {
        let mut out = FpVec::zero(self.p, self.len + other.len);
        for i in 0..self.len {
            out.set(i, self.get(i));
        }
        for i in 0..other.len {
            out.set(self.len + i, other.get(i));
        }
        out
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// A subspace of F_p^n maintained in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    p: u32,
    cols: usize,
    rows: Vec<FpVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(p: u32, cols: usize) -> Self {
        RowSpace {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(p: u32, cols: usize, rows: impl IntoIterator<Item = &'a FpVec>) -> Self {
        let mut space = RowSpace::new(p, cols);
        for r in rows {
            space.insert(r.clone());
        }
        space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the current rows; the result has zeros in every
    /// pivot column.
    pub fn reduce(&self, v: &mut FpVec) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(piv);
            if c != 0 {
                v.axpy(self.p - c, row);
            }
        }
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Inserts `v`; returns true when the dimension grew.
    pub fn insert(&mut self, mut v: FpVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(piv) = v.first_nonzero() else {
            return false;
        };
        let lead = v.get(piv);
        if lead != 1 {
            v.scale(inv_mod(lead, self.p));
        }
        for row in &mut self.rows {
            let c = row.get(piv);
            if c != 0 {
                row.axpy(self.p - c, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    /// Rows sorted by pivot column.
    pub fn basis(&self) -> Vec<FpVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut piv = self.pivots.clone();
        piv.sort_unstable();
        piv
    }

    /// Basis of `{ x : r · x = 0 for every row r }`.
    pub fn orthogonal_complement(&self) -> Vec<FpVec> {
        let mut is_pivot = vec![None; self.cols];
        for (i, &piv) in self.pivots.iter().enumerate() {
            is_pivot[piv] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut x = FpVec::zero(self.p, self.cols);
            x.set(free, 1);
            for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                let c = row.get(free);
                if c != 0 {
                    x.set(piv, self.p - c);
                }
            }
            out.push(x);
        }
        out
    }

    pub fn same_space(&self, other: &RowSpace) -> bool {
        self.dim() == other.dim() && self.rows.iter().all(|r| other.contains(r))
    }
}

/// A dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension(format!("ragged matrix rows (expected {c} columns)")));
        }
        let data = rows.iter().flatten().map(|&x| x % p).collect();
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> FpVec {
        FpVec::from_slice(self.p, &self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn column(&self, j: usize) -> FpVec {
        let col: Vec<u32> = (0..self.rows).map(|i| self.get(i, j)).collect();
        FpVec::from_slice(self.p, &col)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let p = self.p as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot += a * b as u64;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = (v % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn apply(&self, v: &FpVec) -> FpVec {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        let coords = v.to_vec();
        let out: Vec<u32> = (0..self.rows)
            .map(|i| {
                let s: u64 = (0..self.cols)
                    .map(|j| self.get(i, j) as u64 * coords[j] as u64)
                    .sum();
                (s % self.p as u64) as u32
            })
            .collect();
        FpVec::from_slice(self.p, &out)
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn row_space(&self) -> RowSpace {
        let mut space = RowSpace::new(self.p, self.cols);
        for i in 0..self.rows {
            space.insert(self.row(i));
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    /// Basis of the right kernel `{ x : A x = 0 }`.
    pub fn kernel(&self) -> Vec<FpVec> {
        self.row_space().orthogonal_complement()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: self.p,
            dim: self.rows,
            rows: self.to_rows(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.rows.len() != json.dim {
            return Err(Error::Dimension(format!(
                "declared dim {} but {} rows present",
                json.dim,
                json.rows.len()
            )));
        }
        FpMatrix::from_rows(json.p, &json.rows)
    }
}

/// Wire form shared by matrices, cocycle tables and vectors (a vector is a
/// single row).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u32,
    pub dim: usize,
    pub rows: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn from_vector(v: &FpVec) -> Self {
        MatrixJson {
            p: v.prime(),
            dim: 1,
            rows: vec![v.to_vec()],
        }
    }
}
