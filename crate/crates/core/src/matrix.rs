//! Exact linear algebra used everywhere else: sparse integer matrices for
//! differentials and actions, dense rational elimination for homology, bit
//! matrices over GF(2), and Smith normal form over the integers.
//!
//! No floating point anywhere; ranks and kernels are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse integer matrix. Entries are kept in a `BTreeMap` so iteration order
/// (and therefore every derived output) is deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        *self.entries.get(&(r, c)).unwrap_or(&0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = SparseMat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1))
    }

    /// `self * other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        // Group self's entries by column so each of other's entries is
        // expanded once.
        let mut by_col: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (r, c, v) in self.iter() {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut out = SparseMat::zero(self.rows, other.cols);
        for (k, c, v) in other.iter() {
            if let Some(col) = by_col.get(&k) {
                for &(r, w) in col {
                    out.add_to(r, c, w * v);
                }
            }
        }
        out
    }

    /// Keep only entries where `keep(row, col)` holds.
    pub fn filtered(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = SparseMat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            if keep(r, c) {
                out.set(r, c, v);
            }
        }
        out
    }

    /// Reduce mod 2 into a GF(2) matrix.
    pub fn to_gf2(&self) -> Gf2Mat {
        let mut m = Gf2Mat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            if v % 2 != 0 {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn to_rational(&self) -> QMat {
        let mut m = QMat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.data[r * self.cols + c] = BigRational::from_integer(BigInt::from(v));
        }
        m
    }

    pub fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            m[r][c] = BigInt::from(v);
        }
        m
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    pub fn to_qsparse(&self) -> QSparse {
        let mut m = QSparse::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.set(r, c, BigRational::from_integer(BigInt::from(v)));
        }
        m
    }
}

/// Sparse matrix over exact rationals, for action matrices that may pick up
/// denominators (e.g. when expressed in a homology basis).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSparse {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl QSparse {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QSparse { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QSparse::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn diagonal(d: &[BigRational]) -> Self {
        let mut m = QSparse::zero(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigRational) {
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        let mut out = QSparse::zero(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.iter() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        // Group left factor by column for cache-friendly accumulation.
        let mut by_col: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
        for (r, c, v) in self.iter() {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut out = QSparse::zero(self.rows, other.cols);
        for (k, c, v) in other.iter() {
            if let Some(lefts) = by_col.get(&k) {
                for &(r, lv) in lefts {
                    out.add_to(r, c, &(lv * v));
                }
            }
        }
        out
    }

    pub fn to_qmat(&self) -> QMat {
        let mut m = QMat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.data[r * self.cols + c] = v.clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_qmat().rank()
    }

    /// Submatrix on the given row and column index sets (in the given order).
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> QSparse {
        let rmap: BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cmap: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = QSparse::zero(rows.len(), cols.len());
        for (r, c, v) in self.iter() {
            if let (Some(&rr), Some(&cc)) = (rmap.get(&r), cmap.get(&c)) {
                out.set(rr, cc, v.clone());
            }
        }
        out
    }
}

/// Dense matrix over exact rationals; the elimination workhorse.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigRational>]) -> Self {
        let mut m = QMat::zero(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    /// Pivoting scans columns left to right, rows top-down, so the result is
    /// deterministic for a fixed generator order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &f * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Indices of a maximal independent set of columns (pivot columns of the
    /// RREF), i.e. a deterministic basis of the column space.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.clone().rref()
    }

    /// Solve `self * x = b`; `None` if inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.get(prow, self.cols).clone();
        }
        Some(x)
    }
}

/// Dense bit matrix over GF(2); rows are packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Mat {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Gf2Mat { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.words + c / 64;
        let bit = 1u64 << (c % 64);
        if v {
            self.data[w] |= bit;
        } else {
            self.data[w] &= !bit;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            self.data[d + k] ^= self.data[s + k];
        }
    }

    /// Row reduce in place; returns pivot columns.
    pub fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            if pr != row {
                for k in 0..self.words {
                    self.data.swap(row * self.words + k, pr * self.words + k);
                }
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Solve `self * x = b` over GF(2). Free variables are 0 ("first"
    /// solution in the fixed variable order); `None` if inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Gf2Mat::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            if b[r] {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.eliminate();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.get(prow, self.cols);
        }
        Some(x)
    }

    /// One kernel vector that is nonzero in the given free column, if that
    /// column is indeed free. Used to produce alternative solutions.
    pub fn kernel_vector_for(&self, free: usize) -> Option<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.eliminate();
        if pivots.contains(&free) {
            return None;
        }
        let mut v = vec![false; self.cols];
        v[free] = true;
        for (prow, &pcol) in pivots.iter().enumerate() {
            if m.get(prow, free) {
                v[pcol] = true;
            }
        }
        Some(v)
    }

    pub fn mul(&self, other: &Gf2Mat) -> Gf2Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Gf2Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..other.words.min(out.words) {
                        out.data[r * out.words + w] ^= other.data[k * other.words + w];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries,
/// each dividing the next, signs normalized positive).
pub fn smith_normal_form(mat: &SparseMat) -> Vec<BigInt> {
    let mut a = mat.to_bigint();
    let (rows, cols) = (mat.rows, mat.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    loop {
        // Find a nonzero pivot in the remaining block.
        let mut pivot = None;
        'search: for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero() {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        // Reduce row and column t until everything below/right of the pivot
        // in its row/column vanishes.
        loop {
            let mut again = false;
            for r in t + 1..rows {
                if !a[r][t].is_zero() {
                    let q = div_round(&a[r][t], &a[t][t]);
                    if !q.is_zero() {
                        for c in t..cols {
                            let v = &a[r][c] - &q * &a[t][c];
                            a[r][c] = v;
                        }
                    }
                    if !a[r][t].is_zero() {
                        a.swap(t, r);
                        again = true;
                    }
                }
            }
            for c in t + 1..cols {
                if !a[t][c].is_zero() {
                    let q = div_round(&a[t][c], &a[t][t]);
                    if !q.is_zero() {
                        for r in t..rows {
                            let v = &a[r][c] - &q * &a[r][t];
                            a[r][c] = v;
                        }
                    }
                    if !a[t][c].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, c);
                        }
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        // Enforce divisibility: if some later entry is not divisible by the
        // pivot, fold its row in and restart the reduction of this block.
        let mut fixed = true;
        'div: for r in t + 1..rows {
            for c in t + 1..cols {
                if !(&a[r][c] % &a[t][t]).is_zero() {
                    for cc in t..cols {
                        let v = &a[t][cc] + &a[r][cc];
                        a[t][cc] = v;
                    }
                    fixed = false;
                    break 'div;
                }
            }
        }
        if fixed {
            diag.push(a[t][t].abs());
            t += 1;
            if t == rows || t == cols {
                break;
            }
        }
    }
    diag
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Rounded division keeps remainders small so the reduction terminates.
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if (&r * &two).abs() > b.abs() {
        if (r.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sparse_mul_matches_dense() {
        let mut a = SparseMat::zero(2, 3);
        a.set(0, 0, 1);
        a.set(0, 2, -2);
        a.set(1, 1, 3);
        let mut b = SparseMat::zero(3, 2);
        b.set(0, 0, 4);
        b.set(2, 0, 1);
        b.set(1, 1, -1);
        let c = a.mul(&b);
        assert_eq!(c.get(0, 0), 4 - 2);
        assert_eq!(c.get(1, 1), -3);
        assert_eq!(c.get(0, 1), 0);
    }

    #[test]
    fn rref_kernel_and_solve() {
        // x + y + z = 0 has a 2-dimensional kernel.
        let mut m = QMat::zero(1, 3);
        for c in 0..3 {
            m.set(0, c, q(1));
        }
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
        let sol = m.solve(&[q(6)]).unwrap();
        let s: BigRational = sol.iter().cloned().sum();
        assert_eq!(s, q(6));
        assert!(m.solve(&[q(0)]).is_some());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let mut m = QMat::zero(2, 1);
        m.set(0, 0, q(1));
        m.set(1, 0, q(1));
        assert!(m.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn gf2_solve_and_rank() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1
        let mut m = Gf2Mat::zero(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        m.set(2, 0, true);
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[true, false, true]).unwrap();
        assert_eq!(x[0] ^ x[1], true);
        assert_eq!(x[1] ^ x[2], false);
        assert_eq!(x[0] ^ x[2], true);
        assert!(m.solve(&[true, true, true]).is_none());
    }

    #[test]
    fn snf_of_known_matrix() {
        // [[2,4,4],[-6,6,12],[10,-4,-16]] has SNF diag(2,6,12): the
        // determinantal divisors are 2, 12, 144.
        let mut m = SparseMat::zero(3, 3);
        let vals = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
        for (r, row) in vals.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        let d: Vec<i64> = smith_normal_form(&m).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn snf_divisibility_on_random_small() {
        let mut m = SparseMat::zero(3, 4);
        let vals = [[6, 4, 2, 0], [4, 4, 0, 2], [2, 0, 8, 4]];
        for (r, row) in vals.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        let d = smith_normal_form(&m);
        for w in d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "{:?} not divisibility-ordered", d);
        }
        // Rank over Q must agree with the number of nonzero SNF entries.
        assert_eq!(d.len(), m.rank());
    }
}
