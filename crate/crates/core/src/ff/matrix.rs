//! Matrices over `GF(q)` and exact rank computation.

use alloc::vec;
use alloc::vec::Vec;

use super::field::Fp;
use crate::error::{Error, Result};

/// Dense row-major matrix with entries in `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    field: Fp,
    data: Vec<u32>,
}

impl PrimeFieldMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Fp) -> Self {
        PrimeFieldMatrix { rows, cols, field, data: vec![0; rows * cols] }
    }

    /// Entries are reduced mod `q`.
    pub fn from_rows(rows: &[Vec<i64>], field: Fp) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.q();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let (n, m) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..m {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&i| a[i * m + c] != 0) else {
                continue;
            };
            if p != rank {
                for j in 0..m {
                    a.swap(p * m + j, rank * m + j);
                }
            }
            let inv = f.inv(a[rank * m + c]);
            for j in c..m {
                a[rank * m + j] = f.mul(a[rank * m + j], inv);
            }
            for i in rank + 1..n {
                let g = a[i * m + c];
                if g == 0 {
                    continue;
                }
                let ng = f.neg(g);
                for j in c..m {
                    let pv = a[rank * m + j];
                    if pv != 0 {
                        a[i * m + j] = f.add(a[i * m + j], f.mul(ng, pv));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Sparse copy of row `i`.
    pub fn sparse_row(&self, i: usize) -> SparseRow {
        let mut r = SparseRow::default();
        for (j, &v) in self.row(i).iter().enumerate() {
            if v != 0 {
                r.push(j as u32, v);
            }
        }
        r
    }
}

/// Sparse vector: strictly increasing column indices with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow {
    pub cols: Vec<u32>,
    pub vals: Vec<u32>,
}

impl SparseRow {
    pub fn push(&mut self, col: u32, val: u32) {
        self.cols.push(col);
        self.vals.push(val);
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn lead(&self) -> Option<u32> {
        self.cols.first().copied()
    }

    /// Sorts unordered `(col, value)` pairs, summing duplicates mod `q` and dropping zeros.
    pub fn from_unsorted(mut entries: Vec<(u32, u32)>, field: Fp) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out = SparseRow::default();
        let mut i = 0;
        while i < entries.len() {
            let c = entries[i].0;
            let mut v = 0u32;
            while i < entries.len() && entries[i].0 == c {
                v = field.add(v, entries[i].1);
                i += 1;
            }
            if v != 0 {
                out.push(c, v);
            }
        }
        out
    }
}

/// Outcome of reducing a row against the current pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Zero,
    /// The remainder, leading coefficient normalized to 1.
    Residual(SparseRow),
}

/// Incremental row echelon form with sparse pivot rows.
///
/// Rows are reduced in a dense `u64` accumulator. For `q < 2^16` products are
/// summed without reduction and only folded mod `q` when a column is read.
pub struct Echelon {
    field: Fp,
    ncols: usize,
    lazy: bool,
    pivot_of: Vec<u32>,
    starts: Vec<usize>,
    pcols: Vec<u32>,
    pvals: Vec<u32>,
    acc: Vec<u64>,
    bits: Vec<u64>,
    fill_cap: usize,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    /// `fill_cap` bounds the total number of stored pivot entries.
    pub fn new(ncols: usize, field: Fp, fill_cap: usize) -> Self {
        Echelon {
            field,
            ncols,
            lazy: field.q() < 1 << 16,
            pivot_of: vec![NONE; ncols],
            starts: vec![0],
            pcols: Vec::new(),
            pvals: Vec::new(),
            acc: vec![0; ncols],
            bits: vec![0; ncols.div_ceil(64)],
            fill_cap,
        }
    }

    pub fn rank(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Total stored nonzeros across all pivot rows.
    pub fn fill(&self) -> usize {
        self.pcols.len()
    }

    pub fn has_pivot(&self, col: u32) -> bool {
        self.pivot_of[col as usize] != NONE
    }

    /// Pivot row whose leading column is `col`.
    pub fn pivot_row(&self, col: u32) -> Option<(&[u32], &[u32])> {
        let p = self.pivot_of[col as usize];
        (p != NONE).then(|| {
            let (s, e) = (self.starts[p as usize], self.starts[p as usize + 1]);
            (&self.pcols[s..e], &self.pvals[s..e])
        })
    }

    fn next_bit(&self, from: usize) -> Option<usize> {
        let mut w = from / 64;
        if w >= self.bits.len() {
            return None;
        }
        let mut word = self.bits[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w >= self.bits.len() {
                return None;
            }
            word = self.bits[w];
        }
    }

    fn take(&mut self, c: usize) -> u32 {
        self.bits[c / 64] &= !(1u64 << (c % 64));
        let v = (self.acc[c] % self.field.q() as u64) as u32;
        self.acc[c] = 0;
        v
    }

    /// Reduces `row` by every pivot it meets. Does not modify the pivots.
    pub fn reduce(&mut self, row: &SparseRow) -> Reduced {
        let q = self.field.q() as u64;
        let Some(first) = row.lead() else {
            return Reduced::Zero;
        };
        for (&c, &v) in row.cols.iter().zip(&row.vals) {
            let c = c as usize;
            self.acc[c] += v as u64;
            self.bits[c / 64] |= 1 << (c % 64);
        }
        let mut pos = first as usize;
        while let Some(c) = self.next_bit(pos) {
            let v = self.take(c);
            pos = c + 1;
            if v == 0 {
                continue;
            }
            let p = self.pivot_of[c];
            if p == NONE {
                let inv = self.field.inv(v);
                let mut out = SparseRow::default();
                out.push(c as u32, 1);
                while let Some(j) = self.next_bit(pos) {
                    pos = j + 1;
                    let w = self.take(j);
                    if w != 0 {
                        out.push(j as u32, self.field.mul(w, inv));
                    }
                }
                return Reduced::Residual(out);
            }
            let f = q - v as u64;
            let (s, e) = (self.starts[p as usize], self.starts[p as usize + 1]);
            // The pivot's own leading entry is 1 and cancels `v`; skip it.
            for k in s + 1..e {
                let j = self.pcols[k] as usize;
                let add = f * self.pvals[k] as u64;
                self.acc[j] = if self.lazy { self.acc[j] + add } else { (self.acc[j] + add) % q };
                self.bits[j / 64] |= 1 << (j % 64);
            }
        }
        Reduced::Zero
    }

    /// Stores a normalized residual as a new pivot row.
    pub fn push_pivot(&mut self, row: SparseRow) -> Result<()> {
        let lead = row.lead().expect("empty pivot") as usize;
        assert_eq!(self.pivot_of[lead], NONE, "pivot column already taken");
        let size = self.pcols.len() + row.nnz();
        if size > self.fill_cap {
            return Err(Error::CapExceeded { what: "elimination fill", size: size as u128, cap: self.fill_cap as u128 });
        }
        self.pivot_of[lead] = self.rank() as u32;
        self.pcols.extend_from_slice(&row.cols);
        self.pvals.extend_from_slice(&row.vals);
        self.starts.push(self.pcols.len());
        Ok(())
    }

    /// Reduces and, when independent, stores the row. Returns whether the rank grew.
    pub fn insert(&mut self, row: &SparseRow) -> Result<bool> {
        match self.reduce(row) {
            Reduced::Zero => Ok(false),
            Reduced::Residual(r) => {
                self.push_pivot(r)?;
                Ok(true)
            }
        }
    }
}

/// Rank of a list of sparse rows over `ncols` columns.
pub fn sparse_rank(rows: &[SparseRow], ncols: usize, field: Fp, fill_cap: usize) -> Result<usize> {
    let mut e = Echelon::new(ncols, field, fill_cap);
    for r in rows {
        e.insert(r)?;
    }
    Ok(e.rank())
}
