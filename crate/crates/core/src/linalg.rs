//! Dense bit-packed linear algebra over GF(2).
//!
//! Elimination always pivots on the lowest available column index, so bases
//! and coordinates are reproducible from run to run.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A GF(2) vector. Padding bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn check_len(&self, expected: usize) -> Result<()> {
        if self.len != expected {
            Err(Error::LengthMismatch { expected, got: self.len })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix { cols: n, rows: (0..n).map(|i| BitVector::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            r.check_len(cols)?;
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            col.check_len(rows)?;
            for r in col.ones() {
                m.rows[r].set(c, true);
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                BitVector::from_bits(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        BitMatrix { cols, rows }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        v.check_len(self.cols)?;
        let mut out = BitVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.num_rows() {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.num_rows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix { cols: other.cols, rows })
    }

    /// Kronecker product `self ⊗ other`; row `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (r2, c2) = (other.num_rows(), other.cols);
        let mut out = BitMatrix::zeros(self.num_rows() * r2, self.cols * c2);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                for (k, orow) in other.rows.iter().enumerate() {
                    for l in orow.ones() {
                        out.rows[i * r2 + k].set(j * c2 + l, true);
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        Echelon::from_vectors(self.cols, self.rows.iter().cloned()).rank()
    }

    /// Basis of the right null space, one vector per free column in
    /// ascending column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (row, &p) in rref.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form: nonzero rows and their pivot columns.
    fn rref(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut rows: Vec<BitVector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            top += 1;
            if top == rows.len() {
                break;
            }
        }
        rows.truncate(top);
        (rows, pivots)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incremental echelon form with a tag per row recording which input
/// combination produced it.
#[derive(Clone, Debug)]
struct Echelon {
    len: usize,
    rows: Vec<(usize, BitVector, BitVector)>,
    tag_len: usize,
}

impl Echelon {
    fn new(len: usize, tag_len: usize) -> Self {
        Echelon { len, rows: Vec::new(), tag_len }
    }

    fn from_vectors(len: usize, vectors: impl Iterator<Item = BitVector>) -> Self {
        let mut e = Echelon::new(len, 0);
        for v in vectors {
            e.insert(v, BitVector::zeros(0));
        }
        e
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (with its tag) against the stored rows in insertion order.
    /// Each stored row is zero at the pivots of earlier rows, so one pass suffices.
    fn reduce(&self, v: &mut BitVector, tag: &mut BitVector) {
        for (pivot, row, row_tag) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                if self.tag_len > 0 {
                    tag.xor_assign(row_tag);
                }
            }
        }
    }

    /// Returns true if `v` was independent of the stored rows.
    fn insert(&mut self, mut v: BitVector, mut tag: BitVector) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v, &mut tag);
        match v.first_one() {
            Some(p) => {
                self.rows.push((p, v, tag));
                true
            }
            None => false,
        }
    }
}

/// Coefficients expressing `target` in terms of `basis`, or `None` if it is not
/// in the span. The basis need not be independent; dependent members get
/// coefficient zero.
pub fn solve_in_span(basis: &[BitVector], target: &BitVector) -> Result<Option<BitVector>> {
    let len = target.len();
    for b in basis {
        b.check_len(len)?;
    }
    let mut e = Echelon::new(len, basis.len());
    for (i, b) in basis.iter().enumerate() {
        e.insert(b.clone(), BitVector::unit(basis.len(), i));
    }
    let mut v = target.clone();
    let mut tag = BitVector::zeros(basis.len());
    e.reduce(&mut v, &mut tag);
    Ok(v.is_zero().then_some(tag))
}

/// Basis of `span(Z) / span(B)` with a reduction map to quotient coordinates.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    representatives: Vec<BitVector>,
    echelon: Echelon,
}

impl QuotientBasis {
    pub fn representatives(&self) -> &[BitVector] {
        &self.representatives
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of `v` modulo `span(B)`; `None` if `v ∉ span(Z)`.
    pub fn reduce(&self, v: &BitVector) -> Result<Option<BitVector>> {
        v.check_len(self.echelon.len)?;
        let mut v = v.clone();
        let mut tag = BitVector::zeros(self.representatives.len());
        self.echelon.reduce(&mut v, &mut tag);
        Ok(v.is_zero().then_some(tag))
    }
}

/// Builds representatives `z_1..z_k` (chosen from `Z` in order) with
/// `k = dim span(Z) − dim span(B)`. Errors if `span(B) ⊄ span(Z)`.
pub fn quotient_basis(z: &[BitVector], b: &[BitVector], len: usize) -> Result<QuotientBasis> {
    for v in z.iter().chain(b) {
        v.check_len(len)?;
    }
    let ambient = Echelon::from_vectors(len, z.iter().cloned());
    for v in b {
        let mut v = v.clone();
        ambient.reduce(&mut v, &mut BitVector::zeros(0));
        if !v.is_zero() {
            return Err(Error::SubspaceNotContained);
        }
    }
    let dim_z = ambient.rank();
    let mut e = Echelon::new(len, dim_z);
    for v in b {
        e.insert(v.clone(), BitVector::zeros(dim_z));
    }
    let dim_b = e.rank();
    let mut representatives = Vec::with_capacity(dim_z - dim_b);
    for v in z {
        let k = representatives.len();
        if k == dim_z - dim_b {
            break;
        }
        if e.insert(v.clone(), BitVector::unit(dim_z, k)) {
            representatives.push(v.clone());
        }
    }
    // Tags were allocated with room for dim_z entries; trim to k.
    let k = representatives.len();
    for (_, _, tag) in e.rows.iter_mut() {
        let mut t = BitVector::zeros(k);
        for i in tag.ones().filter(|&i| i < k) {
            t.set(i, true);
        }
        *tag = t;
    }
    e.tag_len = k;
    Ok(QuotientBasis { representatives, echelon: e })
}
