//! Bit-packed vectors and matrices over GF(2).
//!
//! Every Hadamard-side object in this crate is stored in `{0,1}` form, where
//! `0` stands for `+1` and `1` for `-1`. Addition is XOR, the Hamming distance
//! is the popcount of the XOR, and rank is computed by Gaussian elimination
//! on packed words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
///
/// Bits past `len` in the last word are kept at zero so that equality and
/// hashing are structural. Ordering is by length, then lexicographic by
/// coordinate, the same as comparing the `0`/`1` strings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of length `len`.
    ///
    /// # Panics
    ///
    /// Panics if `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "BitVector length must be positive");
        BitVector {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// All-one vector of length `len`.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        v.words.iter_mut().for_each(|w| *w = !0);
        v.clear_tail();
        v
    }

    /// Builds a vector whose `i`-th coordinate is `f(i)`.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidInput(
                "bit vector must have length >= 1".into(),
            ));
        }
        Ok(Self::from_fn(bits.len(), |i| bits[i]))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_ones(&self) -> bool {
        self.weight() == self.len
    }

    pub fn complement(&self) -> Self {
        let mut v = self.clone();
        v.complement_in_place();
        v
    }

    pub fn complement_in_place(&mut self) {
        self.words.iter_mut().for_each(|w| *w = !*w);
        self.clear_tail();
    }

    /// `self + e·(1,…,1)`: unchanged for `e = false`, complemented for `e = true`.
    pub fn add_constant(&self, e: bool) -> Self {
        if e {
            self.complement()
        } else {
            self.clone()
        }
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other)?;
        Ok(self.xor_unchecked(other))
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<()> {
        self.check_len(other)?;
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a ^= b);
        Ok(())
    }

    pub fn hamming_distance(&self, other: &BitVector) -> Result<usize> {
        self.check_len(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub(crate) fn xor_unchecked(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    fn check_len(&self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::dimension(self.len, other.len));
        }
        Ok(())
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return (a & low).cmp(&(b & low));
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
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

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInput(format!(
                    "illegal bit character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitVector::from_bits(&bits)
    }
}

/// Hamming distance between two vectors of equal length.
pub fn hamming_distance(x: &BitVector, y: &BitVector) -> Result<usize> {
    x.hamming_distance(y)
}

/// Coordinatewise sum mod 2.
pub fn xor(x: &BitVector, y: &BitVector) -> Result<BitVector> {
    x.xor(y)
}

/// Adds the constant vector `e·(1,…,1)`.
pub fn add_constant(x: &BitVector, e: bool) -> BitVector {
    x.add_constant(e)
}

/// Dimension of the GF(2) span of `vectors`.
///
/// An empty list has rank 0. Elimination keeps a basis in insertion order in
/// which every element is zero at the pivots of the elements before it, so one
/// forward pass reduces each incoming vector completely.
pub fn gf2_rank(vectors: &[BitVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.len();
    let mut basis: Vec<(usize, BitVector)> = Vec::new();
    for v in vectors {
        if v.len() != len {
            return Err(Error::dimension(len, v.len()));
        }
        let mut r = v.clone();
        for (pivot, b) in &basis {
            if r.get(*pivot) {
                r.words.iter_mut().zip(&b.words).for_each(|(x, y)| *x ^= y);
            }
        }
        if let Some(pivot) = r.lowest_one() {
            basis.push((pivot, r));
            if basis.len() == len {
                break;
            }
        }
    }
    Ok(basis.len())
}

/// A rectangular matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidInput(
                "matrix must have at least one row".into(),
            ));
        };
        let cols = first.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dimension(cols, bad.len()));
        }
        Ok(BinaryMatrix { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0, "matrix must have at least one row");
        BinaryMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(rows > 0, "matrix must have at least one row");
        BinaryMatrix {
            cols,
            rows: (0..rows)
                .map(|i| BitVector::from_fn(cols, |j| f(i, j)))
                .collect(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_fn(self.rows.len(), |i| self.rows[i].get(j))
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [BitVector] {
        &mut self.rows
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_string()))
            .finish()
    }
}
