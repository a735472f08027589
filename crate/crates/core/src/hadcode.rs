//! Binary Hadamard codes and their rank / kernel invariants.
//!
//! The code of a Hadamard matrix of order `n` is the set of rows of its
//! normalized form together with their complements: a `(n, 2n, n/2)` code
//! containing the all-zero word. Two invariants separate inequivalent codes:
//! the rank (dimension of the span) and the dimension of the kernel
//! `{x : x + C = C}`.

use std::collections::HashSet;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{gf2_rank, BitVector};
use crate::hadamard::{normalize, HadamardMatrix};

/// A set of distinct binary words of one length.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    length: usize,
    words: Vec<BitVector>,
    index: HashSet<BitVector>,
}

impl BinaryCode {
    /// Duplicates are dropped; words are stored sorted.
    pub fn from_words(words: Vec<BitVector>) -> Result<Self> {
        let Some(first) = words.first() else {
            return Err(Error::InvalidInput(
                "code must contain at least one word".into(),
            ));
        };
        let length = first.len();
        if let Some(w) = words.iter().find(|w| w.len() != length) {
            return Err(Error::dimension(length, w.len()));
        }
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        let index = words.iter().cloned().collect();
        Ok(BinaryCode {
            length,
            words,
            index,
        })
    }

    /// Word length `n`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of codewords.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    pub fn contains(&self, w: &BitVector) -> bool {
        self.index.contains(w)
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::InvalidInput(
                "minimum distance needs at least two codewords".into(),
            ));
        }
        let mut best = usize::MAX;
        for (i, x) in self.words.iter().enumerate() {
            for y in &self.words[i + 1..] {
                best = best.min(x.distance_unchecked(y));
            }
        }
        Ok(best)
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.words).expect("codewords share one length")
    }

    /// A codeword `c` with `x + c ∉ C`, or `None` when `x + C = C`. A vector
    /// of the wrong length never translates `C` onto itself; its witness is
    /// the first codeword.
    pub fn translate_witness(&self, x: &BitVector) -> Option<&BitVector> {
        if x.len() != self.length {
            return self.words.first();
        }
        self.words
            .iter()
            .find(|c| !self.index.contains(&x.xor_unchecked(c)))
    }

    /// `{x ∈ C : x + C = C}`, found by translating each codeword over the
    /// whole code. Restricting candidates to `C` loses nothing because
    /// `0 ∈ C` forces `x = x + 0 ∈ C`.
    pub fn kernel(&self) -> Result<Vec<BitVector>> {
        if !self.contains(&BitVector::zeros(self.length)) {
            return Err(Error::InvalidInput(
                "kernel is defined here only for codes containing the zero word".into(),
            ));
        }
        Ok(self
            .words
            .iter()
            .filter(|x| self.translate_witness(x).is_none())
            .cloned()
            .collect())
    }

    pub fn dim_kernel(&self) -> Result<usize> {
        let size = self.kernel()?.len();
        assert!(
            size.is_power_of_two(),
            "kernel of size {size} is not a subspace"
        );
        Ok(size.trailing_zeros() as usize)
    }
}

/// The `(n, 2n, n/2)` code of a Hadamard matrix.
#[derive(Clone, Debug)]
pub struct HadamardCode(BinaryCode);

impl Deref for HadamardCode {
    type Target = BinaryCode;

    fn deref(&self) -> &BinaryCode {
        &self.0
    }
}

impl HadamardCode {
    pub fn into_inner(self) -> BinaryCode {
        self.0
    }
}

/// Rows of the normalized matrix plus their complements.
pub fn code_from_matrix(h: &HadamardMatrix) -> Result<HadamardCode> {
    if h.order() < 2 {
        return Err(Error::InvalidInput("Hadamard codes need order >= 2".into()));
    }
    let h = normalize(h);
    let words = h
        .rows()
        .iter()
        .flat_map(|r| [r.clone(), r.complement()])
        .collect();
    let code = BinaryCode::from_words(words)?;
    debug_assert_eq!(code.size(), 2 * h.order());
    Ok(HadamardCode(code))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub order: usize,
    pub rank: usize,
    pub dim_kernel: usize,
    pub min_distance: usize,
}

impl std::fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "order={} rank={} kernel={} mindist={}",
            self.order, self.rank, self.dim_kernel, self.min_distance
        )
    }
}

pub fn signature(h: &HadamardMatrix) -> Result<InvariantSignature> {
    let code = code_from_matrix(h)?;
    Ok(InvariantSignature {
        order: h.order(),
        rank: code.rank(),
        dim_kernel: code.dim_kernel()?,
        min_distance: code.min_distance()?,
    })
}
