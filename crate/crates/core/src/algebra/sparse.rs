use alloc::vec;
use alloc::vec::Vec;

use super::ring::Ring;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, i64)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, 1)],
        }
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(ring: Ring, entries: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut raw: Vec<(usize, i64)> = entries
            .into_iter()
            .map(|(i, v)| (i, ring.from_int(v)))
            .collect();
        raw.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = ring.add(last.1, v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    /// Wraps entries already sorted, reduced and nonzero.
    pub fn from_sorted(entries: Vec<(usize, i64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn from_dense(ring: Ring, values: &[i64]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, ring.from_int(v)))
                .filter(|e| e.1 != 0)
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        let mut out = vec![0; len];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, i64)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> i64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    /// Smallest index carrying a nonzero entry.
    pub fn leading(&self) -> Option<(usize, i64)> {
        self.entries.first().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, ring: Ring, other: &SparseVec, c: i64) -> SparseVec {
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, ring.mul(c, b[j].1)));
                j += 1;
            } else {
                let v = ring.add(a[i].1, ring.mul(c, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, ring: Ring, a: i64, other: &SparseVec, b: i64) -> SparseVec {
        self.scale(ring, a).add_scaled(ring, other, b)
    }

    pub fn scale(&self, ring: Ring, c: i64) -> SparseVec {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|&(i, v)| (i, ring.mul(c, v)))
                .filter(|e| e.1 != 0)
                .collect(),
        }
    }

    pub fn neg(&self, ring: Ring) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|&(i, v)| (i, ring.neg(v)))
                .collect(),
        }
    }

    pub fn dot(&self, ring: Ring, other: &SparseVec) -> i64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = 0;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    acc = ring.add(acc, ring.mul(a[i].1, b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Dot product against a dense vector.
    pub fn dot_dense(&self, ring: Ring, dense: &[i64]) -> i64 {
        self.entries
            .iter()
            .fold(0, |acc, &(i, v)| ring.add(acc, ring.mul(v, dense[i])))
    }

    /// Re-indexes entries through `map`, dropping indices mapped to `None`.
    pub fn reindex(&self, ring: Ring, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            ring,
            self.entries
                .iter()
                .filter_map(|&(i, v)| map(i).map(|j| (j, v))),
        )
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_dense(ring: Ring, dense: &DenseMatrix) -> Self {
        let cols = (0..dense.cols())
            .map(|j| SparseVec::from_entries(ring, (0..dense.rows()).map(|i| (i, dense.get(i, j)))))
            .collect();
        SparseMatrix {
            rows: dense.rows(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn mul_vec(&self, ring: Ring, x: &SparseVec) -> SparseVec {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (j, c) in x.iter() {
            for (i, v) in self.cols[j].iter() {
                acc.push((i, ring.mul(c, v)));
            }
        }
        SparseVec::from_entries(ring, acc)
    }

    pub fn mul(&self, ring: Ring, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch in product");
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.mul_vec(ring, c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[i].push((j, v));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn neg(&self, ring: Ring) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.neg(ring)).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                d.set(i, j, v);
            }
        }
        d
    }

    /// Nonzero entries as `(row, col, value)`, column by column.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (i, j, v)))
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, ring: Ring, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = ring.add(out.get(i, j), ring.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: Ring, x: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Sub-matrix of the given rows and columns.
    pub fn select(
        &self,
        rows: core::ops::Range<usize>,
        cols: core::ops::Range<usize>,
    ) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`.
    pub fn add_row(&mut self, ring: Ring, target: usize, source: usize, c: i64) {
        if c == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s != 0 {
                let v = ring.add(self.get(target, j), ring.mul(c, s));
                self.set(target, j, v);
            }
        }
    }

    /// `col[target] += c * col[source]`.
    pub fn add_col(&mut self, ring: Ring, target: usize, source: usize, c: i64) {
        if c == 0 {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s != 0 {
                let v = ring.add(self.get(i, target), ring.mul(c, s));
                self.set(i, target, v);
            }
        }
    }

    /// Replaces rows `x`, `y` by `m[0] x + m[1] y` and `m[2] x + m[3] y`.
    pub fn mix_rows(&mut self, ring: Ring, x: usize, y: usize, m: [i64; 4]) {
        for j in 0..self.cols {
            let (a, b) = (self.get(x, j), self.get(y, j));
            self.set(x, j, ring.add(ring.mul(m[0], a), ring.mul(m[1], b)));
            self.set(y, j, ring.add(ring.mul(m[2], a), ring.mul(m[3], b)));
        }
    }

    /// Replaces columns `x`, `y` by `m[0] x + m[1] y` and `m[2] x + m[3] y`.
    pub fn mix_cols(&mut self, ring: Ring, x: usize, y: usize, m: [i64; 4]) {
        for i in 0..self.rows {
            let (a, b) = (self.get(i, x), self.get(i, y));
            self.set(i, x, ring.add(ring.mul(m[0], a), ring.mul(m[1], b)));
            self.set(i, y, ring.add(ring.mul(m[2], a), ring.mul(m[3], b)));
        }
    }

    pub fn scale_row(&mut self, ring: Ring, i: usize, c: i64) {
        for j in 0..self.cols {
            let v = ring.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, ring: Ring, j: usize, c: i64) {
        for i in 0..self.rows {
            let v = ring.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Determinant by fraction-free Bareiss elimination (ℤ) or Gaussian
    /// elimination (fields).
    pub fn determinant(&self, ring: Ring) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return ring.from_int(1);
        }
        match ring {
            Ring::Integers => {
                let mut m: Vec<Vec<i128>> = (0..n)
                    .map(|i| self.row(i).iter().map(|&v| v as i128).collect())
                    .collect();
                let mut sign = 1i128;
                let mut prev = 1i128;
                for k in 0..n {
                    if m[k][k] == 0 {
                        match (k + 1..n).find(|&i| m[i][k] != 0) {
                            Some(i) => {
                                m.swap(i, k);
                                sign = -sign;
                            }
                            None => return 0,
                        }
                    }
                    for i in k + 1..n {
                        for j in k + 1..n {
                            m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                        }
                    }
                    prev = m[k][k];
                }
                i64::try_from(sign * m[n - 1][n - 1]).expect("determinant overflows i64")
            }
            Ring::PrimeField(_) => {
                let mut m = self.clone();
                let mut det = 1;
                for k in 0..n {
                    let Some(p) = (k..n).find(|&i| m.get(i, k) != 0) else {
                        return 0;
                    };
                    if p != k {
                        m.swap_rows(p, k);
                        det = ring.neg(det);
                    }
                    let pivot = m.get(k, k);
                    det = ring.mul(det, pivot);
                    let inv = ring.unit_inverse(pivot);
                    for i in k + 1..n {
                        let f = ring.mul(m.get(i, k), inv);
                        m.add_row(ring, i, k, ring.neg(f));
                    }
                }
                det
            }
        }
    }
}
