//! Dense GF(2) vectors and matrices packed into 64-bit words.
//!
//! Everything downstream — codes, dual sampling, decoding — reduces to XOR,
//! AND and popcount over packed words, so this module keeps the
//! representation small and the operations branch-free. A [`BitVector`]
//! stores bit `i` in word `i / 64` at bit `i % 64`; unused high bits of the
//! last word are always zero, which makes equality and hashing on the raw
//! words sound.
//!
//! # Example
//!
//! ```
//! use dualdec_core::gf2::BitVector;
//!
//! let x: BitVector = "1100".parse().unwrap();
//! let y: BitVector = "1010".parse().unwrap();
//! assert_eq!(x.weight(), 2);
//! assert!(x.dot(&y)); // overlap {bit 0} has odd size
//! ```

use std::fmt;
use std::ops::BitXorAssign;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the final word of a `len`-bit vector.
#[inline]
fn tail_mask(len: usize) -> u64 {
    let rem = len % WORD_BITS;
    if rem == 0 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

// ---------------------------------------------------------------------------
// BitVector
// ---------------------------------------------------------------------------

/// A fixed-length vector over GF(2), bit-packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Unit vector with a single one at `pos`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= len`.
    #[must_use]
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(pos, true);
        v
    }

    /// Vector from a slice of 0/1 values, index 0 first.
    ///
    /// # Panics
    ///
    /// Panics if any entry is not 0 or 1.
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            assert!(b <= 1, "bit {i} is {b}, expected 0 or 1");
            if b == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Uniformly random vector of the given length.
    #[must_use]
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..word_count(len)).map(|_| rng.random()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        BitVector { len, words }
    }

    /// Number of bits.
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the vector has no bits at all.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at `pos`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= len`.
    #[inline]
    #[must_use]
    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "bit index {pos} out of range {}", self.len);
        (self.words[pos / WORD_BITS] >> (pos % WORD_BITS)) & 1 == 1
    }

    /// Sets the bit at `pos`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= len`.
    #[inline]
    pub fn set(&mut self, pos: usize, value: bool) {
        assert!(pos < self.len, "bit index {pos} out of range {}", self.len);
        let mask = 1u64 << (pos % WORD_BITS);
        if value {
            self.words[pos / WORD_BITS] |= mask;
        } else {
            self.words[pos / WORD_BITS] &= !mask;
        }
    }

    /// Flips the bit at `pos`.
    ///
    /// # Panics
    ///
    /// Panics if `pos >= len`.
    #[inline]
    pub fn flip(&mut self, pos: usize) {
        assert!(pos < self.len, "bit index {pos} out of range {}", self.len);
        self.words[pos / WORD_BITS] ^= 1u64 << (pos % WORD_BITS);
    }

    /// Hamming weight.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when every bit is zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2): parity of `|self AND other|`.
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    #[inline]
    #[must_use]
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot of length {} with {}",
            self.len, other.len
        );
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Hamming distance to `other`.
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    #[must_use]
    pub fn distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let bit = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// Raw packed words, least-significant bit first.
    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    /// Elementwise XOR (vector addition over GF(2)).
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(
            self.len, rhs.len,
            "xor of length {} with {}",
            self.len, rhs.len
        );
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, index 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::parse(
                        1,
                        i + 1,
                        format!("expected 0 or 1, found {other:?}"),
                    ))
                }
            }
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// BinaryMatrix
// ---------------------------------------------------------------------------

/// A dense matrix over GF(2), stored as one [`BitVector`] per row.
///
/// The column count is kept explicitly so that matrices with zero rows (an
/// empty null-space basis, for instance) remain well formed.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    /// All-zero matrix.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    /// Identity matrix of order `n`.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Matrix from explicit rows.
    ///
    /// # Panics
    ///
    /// Panics if the rows do not all share `cols` bits.
    #[must_use]
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(
                r.len(),
                cols,
                "row {i} has length {}, expected {cols}",
                r.len()
            );
        }
        BinaryMatrix { cols, rows }
    }

    /// Uniformly random matrix.
    #[must_use]
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        BinaryMatrix {
            cols,
            rows: (0..rows).map(|_| BitVector::random(cols, rng)).collect(),
        }
    }

    /// Number of rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Borrow of row `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is out of range.
    #[must_use]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// Iterator over rows.
    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter()
    }

    /// Column `j` extracted as a vector of length `rows`.
    ///
    /// # Panics
    ///
    /// Panics if `j >= cols`.
    #[must_use]
    pub fn column(&self, j: usize) -> BitVector {
        assert!(j < self.cols, "column {j} out of range {}", self.cols);
        let mut v = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Sets entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Transposed copy.
    #[must_use]
    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Horizontal concatenation `[self | right]`.
    ///
    /// # Panics
    ///
    /// Panics if the row counts differ.
    #[must_use]
    pub fn hstack(&self, right: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(
            self.rows(),
            right.rows(),
            "hstack with mismatched row counts"
        );
        let cols = self.cols + right.cols;
        let mut out = BinaryMatrix::zeros(self.rows(), cols);
        for i in 0..self.rows() {
            for j in self.rows[i].ones() {
                out.rows[i].set(j, true);
            }
            for j in right.rows[i].ones() {
                out.rows[i].set(self.cols + j, true);
            }
        }
        out
    }

    /// Copy of columns `start..end`.
    ///
    /// # Panics
    ///
    /// Panics if `start > end` or `end > cols`.
    #[must_use]
    pub fn slice_cols(&self, start: usize, end: usize) -> BinaryMatrix {
        assert!(start <= end && end <= self.cols);
        let mut out = BinaryMatrix::zeros(self.rows(), end - start);
        for i in 0..self.rows() {
            for j in self.rows[i].ones() {
                if j >= start && j < end {
                    out.rows[i].set(j - start, true);
                }
            }
        }
        out
    }

    /// Matrix–vector product `M x` over GF(2); result has one bit per row.
    ///
    /// # Panics
    ///
    /// Panics if `x.len() != cols`.
    #[must_use]
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(
            x.len(),
            self.cols,
            "mul_vec with vector of length {}, expected {}",
            x.len(),
            self.cols
        );
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// True when every row of `self` is orthogonal to every row of `other`.
    ///
    /// # Panics
    ///
    /// Panics if the column counts differ.
    #[must_use]
    pub fn is_orthogonal_to(&self, other: &BinaryMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        self.rows
            .iter()
            .all(|r| other.rows.iter().all(|s| !r.dot(s)))
    }

    /// Rank over GF(2).
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut work = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..work.len()).find(|&i| work[i].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            let pivot_row = work[rank].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != rank && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Reduced row-echelon form (no column permutation).
    #[must_use]
    pub fn rref(&self) -> BinaryMatrix {
        let (reduced, _) = self.rref_with_pivots();
        reduced
    }

    fn rref_with_pivots(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut work = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(pivot) = (r..work.len()).find(|&i| work[i].get(col)) else {
                continue;
            };
            work.swap(r, pivot);
            let pivot_row = work[r].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
            if r == work.len() {
                break;
            }
        }
        (BinaryMatrix::from_rows(work, self.cols), pivots)
    }

    /// Basis of the right null space: all `x` with `M x = 0`.
    ///
    /// Returns one basis vector per row; the basis has exactly
    /// `cols - rank(M)` rows (possibly zero).
    #[must_use]
    pub fn null_space_basis(&self) -> BinaryMatrix {
        let (reduced, pivots) = self.rref_with_pivots();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                map[c] = Some(r);
            }
            map
        };
        let mut basis = Vec::new();
        for (free, pivot) in pivot_of_col.iter().enumerate() {
            if pivot.is_some() {
                continue;
            }
            let mut x = BitVector::zeros(self.cols);
            x.set(free, true);
            for (r, &c) in pivots.iter().enumerate() {
                if reduced.rows[r].get(free) {
                    x.set(c, true);
                }
            }
            basis.push(x);
        }
        BinaryMatrix::from_rows(basis, self.cols)
    }

    /// Row reduction to systematic form `[I | P]` with full pivoting.
    ///
    /// Column swaps are recorded in the returned permutation:
    /// `perm[j]` is the original index of the column now at position `j`.
    /// Matrices that are already systematic come back unchanged with the
    /// identity permutation. Rank-deficient input is rejected rather than
    /// repaired.
    pub fn row_reduce_systematic(&self) -> Result<(BinaryMatrix, Vec<usize>)> {
        let k = self.rows();
        if k > self.cols {
            return Err(Error::Invalid(format!(
                "cannot make {}x{} matrix systematic: more rows than columns",
                k, self.cols
            )));
        }
        let mut work = self.clone();
        let mut perm: Vec<usize> = (0..self.cols).collect();
        for r in 0..k {
            let mut found = None;
            'search: for j in r..work.cols {
                for i in r..k {
                    if work.rows[i].get(j) {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = found else {
                return Err(Error::Invalid(format!(
                    "matrix has rank {r}, expected full row rank {k}"
                )));
            };
            work.rows.swap(r, pi);
            if pj != r {
                work.swap_columns(r, pj);
                perm.swap(r, pj);
            }
            let pivot_row = work.rows[r].clone();
            for (i, row) in work.rows.iter_mut().enumerate() {
                if i != r && row.get(r) {
                    *row ^= &pivot_row;
                }
            }
        }
        Ok((work, perm))
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        for row in &mut self.rows {
            let (ba, bb) = (row.get(a), row.get(b));
            row.set(a, bb);
            row.set(b, ba);
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
