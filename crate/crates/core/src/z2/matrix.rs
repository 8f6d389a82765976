use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use super::vector::{first_one, words_for, xor_words, BitVec, WORD_BITS};
use super::{ShapeError, Singular};

/// Dense Z₂ matrix stored row-major with bit-packed rows.
///
/// Each row occupies `ceil(cols / 64)` words and bits past `cols` are zero.
/// Matrices with zero rows or zero columns are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors. `cols` is needed
    /// to fix the shape when `rows` is empty.
    #[must_use]
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} not {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    #[must_use]
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        Self::from_rows(rows, columns).transpose()
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub const fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    #[must_use]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[must_use]
    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (d, r) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_words(d, r);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut word = w;
                while word != 0 {
                    let j = wi * WORD_BITS + word.trailing_zeros() as usize;
                    word &= word - 1;
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Copy of the rows in `range`.
    #[must_use]
    pub fn row_block(&self, range: Range<usize>) -> Self {
        assert!(range.end <= self.rows, "row block out of range");
        Self {
            rows: range.len(),
            cols: self.cols,
            stride: self.stride,
            data: self.data[range.start * self.stride..range.end * self.stride].to_vec(),
        }
    }

    /// Overwrites rows `start..start + block.rows()` with `block`.
    pub fn set_row_block(&mut self, start: usize, block: &Self) {
        assert_eq!(block.cols, self.cols, "column mismatch in set_row_block");
        assert!(start + block.rows <= self.rows, "row block out of range");
        self.data[start * self.stride..(start + block.rows) * self.stride]
            .copy_from_slice(&block.data);
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.rows != other.rows {
            return Err(ShapeError::new("hstack", self, other));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    m.set(i, self.cols + j, true);
                }
            }
        }
        Ok(m)
    }

    /// `self` stacked on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.cols != other.cols {
            return Err(ShapeError::new("vstack", self, other));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Matrix product over Z₂.
    pub fn mul(&self, rhs: &Self) -> Result<Self, ShapeError> {
        if self.cols != rhs.rows {
            return Err(ShapeError::new("mul", self, rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut word = w;
                while word != 0 {
                    let k = wi * WORD_BITS + word.trailing_zeros() as usize;
                    word &= word - 1;
                    xor_words(&mut out.data[dst..dst + out.stride], rhs.row_words(k));
                }
            }
        }
        Ok(out)
    }

    /// Product with a column vector.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, ShapeError> {
        if self.cols != v.len() {
            return Err(ShapeError {
                op: "mul_vec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot column of each nonzero row. Pivots are found column by column,
    /// taking the first eligible row in row order.
    pub(crate) fn reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let w = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let Some(p) = (next..self.rows).find(|&r| self.data[r * self.stride + w] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(next, p);
            for r in 0..self.rows {
                if r != next && self.data[r * self.stride + w] & mask != 0 {
                    self.xor_row(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Row rank over Z₂.
    #[must_use]
    pub fn rank(&self) -> usize {
        // Forward elimination on whichever orientation has fewer rows.
        let mut m = if self.rows <= self.cols {
            self.clone()
        } else {
            self.transpose()
        };
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let w = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & mask != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.data[r * m.stride + w] & mask != 0 {
                    m.xor_row(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a square matrix by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, Singular> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = self
            .hstack(&Self::identity(n))
            .expect("identity has matching row count");
        let pivots = aug.reduce_in_place();
        let rank = pivots.iter().take_while(|&&c| c < n).count();
        if rank < n {
            return Err(Singular { rank });
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if aug.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Ok(inv)
    }

    /// Some `x` with `self · x = rhs`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, rhs: &BitVec) -> Result<Option<BitVec>, ShapeError> {
        if rhs.len() != self.rows {
            return Err(ShapeError {
                op: "solve",
                left: (self.rows, self.cols),
                right: (rhs.len(), 1),
            });
        }
        let rhs_col = Self::from_columns(self.rows, core::slice::from_ref(rhs));
        let mut aug = self.hstack(&rhs_col).expect("row counts match");
        let pivots = aug.reduce_in_place();
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if c == self.cols {
                return Ok(None);
            }
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the right null space `{x : self · x = 0}`, one vector per
    /// free column in increasing column order.
    #[must_use]
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (r, &c) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Lexicographically smallest set of column indices whose columns form a
    /// basis of the column space, found by a left-to-right greedy scan.
    #[must_use]
    pub fn earliest_basis(&self) -> Vec<usize> {
        let columns = self.transpose();
        let mut basis = EchelonBasis::new(self.rows);
        (0..columns.rows)
            .filter(|&j| basis.insert_words(columns.row_words(j)))
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i).to_bit_string())?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained basis of a subspace of Z₂ⁿ, keyed by the lowest
/// set bit of each stored vector.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    by_pivot: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl EchelonBasis {
    #[must_use]
    pub fn new(len: usize) -> Self {
        Self {
            len,
            by_pivot: vec![None; len],
            rank: 0,
        }
    }

    #[must_use]
    pub const fn rank(&self) -> usize {
        self.rank
    }

    #[must_use]
    pub const fn dimension(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the stored vectors. Zero result means `v` lies in
    /// the span.
    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.len, "length mismatch in reduce");
        let mut words = v.words().to_vec();
        self.reduce_words(&mut words);
        BitVec::from_words(self.len, words)
    }

    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in insert");
        self.insert_words(v.words())
    }

    fn reduce_words(&self, words: &mut [u64]) -> Option<usize> {
        while let Some(p) = first_one(words) {
            match &self.by_pivot[p] {
                Some(b) => xor_words(words, b),
                None => return Some(p),
            }
        }
        None
    }

    fn insert_words(&mut self, v: &[u64]) -> bool {
        let mut words = v.to_vec();
        match self.reduce_words(&mut words) {
            Some(p) => {
                self.by_pivot[p] = Some(words);
                self.rank += 1;
                true
            }
            None => false,
        }
    }
}
