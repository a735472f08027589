//! Sylvester-type constructions.
//!
//! All three are XOR-shifts of rows of the input matrices:
//!
//! * [`sylvester_product`]: block `(i, j)` is `h_{i,j} + H_m`.
//! * [`no_song`]: block `(i, j)` is `c_{i,j} + B_j`, one order-`k` matrix per
//!   block column.
//! * [`modified`]: row `(i, s)` concatenates, for `j = 1..m`, the segment
//!   `a^{(j)}_s + b^{(s)}_{i,j}`. The outer index `i` picks the shell, `s` the
//!   row inside the shell.
//!
//! Output rows are block-row-major and columns are `m` segments of width `k`,
//! so the specialization chain `modified → no_song → sylvester_product` holds
//! as exact matrix equality.

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};
use crate::hadamard::HadamardMatrix;

/// Concatenation of `segment + shift` over the given segments.
fn concat_shifted<'a>(
    len: usize,
    segments: impl IntoIterator<Item = (&'a BitVector, bool)>,
) -> BitVector {
    let mut out = BitVector::zeros(len);
    let mut offset = 0;
    for (seg, shift) in segments {
        for (c, bit) in seg.iter().enumerate() {
            if bit ^ shift {
                out.set(offset + c, true);
            }
        }
        offset += seg.len();
    }
    debug_assert_eq!(offset, len);
    out
}

/// `H_n ⊗ H_m` in `{0,1}` form.
pub fn sylvester_product(hn: &HadamardMatrix, hm: &HadamardMatrix) -> HadamardMatrix {
    let (n, m) = (hn.order(), hm.order());
    let mut rows = Vec::with_capacity(n * m);
    for i in 0..n {
        for r in 0..m {
            let segs = (0..n).map(|j| (hm.row(r), hn.get(i, j)));
            rows.push(concat_shifted(n * m, segs));
        }
    }
    HadamardMatrix::from_construction(BinaryMatrix::from_rows(rows).expect("equal row widths"))
}

/// Generalized Sylvester construction: `C` of order `m` and `B_1..B_m` of order `k`.
pub fn no_song(c: &HadamardMatrix, bs: &[HadamardMatrix]) -> Result<HadamardMatrix> {
    let m = c.order();
    if bs.len() != m {
        return Err(Error::InvalidInput(format!(
            "nosong construction requires m = {m} B-matrices (one per column of C), got {}",
            bs.len()
        )));
    }
    let k = bs[0].order();
    if let Some((j, b)) = bs.iter().enumerate().find(|(_, b)| b.order() != k) {
        return Err(Error::InvalidInput(format!(
            "nosong construction requires all B-matrices of one order k = {k}, B{} has order {}",
            j + 1,
            b.order()
        )));
    }
    let mut rows = Vec::with_capacity(m * k);
    for i in 0..m {
        for r in 0..k {
            let segs = bs.iter().enumerate().map(|(j, b)| (b.row(r), c.get(i, j)));
            rows.push(concat_shifted(m * k, segs));
        }
    }
    Ok(HadamardMatrix::from_construction(
        BinaryMatrix::from_rows(rows).expect("equal row widths"),
    ))
}

/// Inputs of the two-pool construction: `m` matrices of order `k` and `k`
/// matrices of order `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedInputs {
    a: Vec<HadamardMatrix>,
    b: Vec<HadamardMatrix>,
}

impl ModifiedInputs {
    pub fn new(a: Vec<HadamardMatrix>, b: Vec<HadamardMatrix>) -> Result<Self> {
        let (Some(a0), Some(b0)) = (a.first(), b.first()) else {
            return Err(Error::InvalidInput(
                "modified construction requires non-empty A and B lists".into(),
            ));
        };
        let (k, m) = (a0.order(), b0.order());
        if let Some((j, x)) = a.iter().enumerate().find(|(_, x)| x.order() != k) {
            return Err(Error::InvalidInput(format!(
                "modified construction requires all A-matrices of one order k = {k}, A{} has order {}",
                j + 1,
                x.order()
            )));
        }
        if let Some((u, x)) = b.iter().enumerate().find(|(_, x)| x.order() != m) {
            return Err(Error::InvalidInput(format!(
                "modified construction requires all B-matrices of one order m = {m}, B{} has order {}",
                u + 1,
                x.order()
            )));
        }
        if a.len() != m {
            return Err(Error::InvalidInput(format!(
                "modified construction requires m = {m} A-matrices of order k = {k}, got {}",
                a.len()
            )));
        }
        if b.len() != k {
            return Err(Error::InvalidInput(format!(
                "modified construction requires k = {k} B-matrices of order m = {m}, got {}",
                b.len()
            )));
        }
        Ok(ModifiedInputs { a, b })
    }

    /// Order of each `A_j`.
    pub fn k(&self) -> usize {
        self.a[0].order()
    }

    /// Order of each `B_u`.
    pub fn m(&self) -> usize {
        self.b[0].order()
    }

    pub fn a(&self) -> &[HadamardMatrix] {
        &self.a
    }

    pub fn b(&self) -> &[HadamardMatrix] {
        &self.b
    }
}

/// Two-pool construction of order `km`.
///
/// Global row `i·k + s` (shell `i`, inner index `s`) has segment `j` equal to
/// row `s` of `A_j` shifted by entry `(i, j)` of `B_s`.
pub fn modified(inputs: &ModifiedInputs) -> HadamardMatrix {
    let (k, m) = (inputs.k(), inputs.m());
    let mut rows = Vec::with_capacity(m * k);
    for i in 0..m {
        for s in 0..k {
            let bs = &inputs.b[s];
            let segs = inputs
                .a
                .iter()
                .enumerate()
                .map(|(j, a)| (a.row(s), bs.get(i, j)));
            rows.push(concat_shifted(m * k, segs));
        }
    }
    HadamardMatrix::from_construction(BinaryMatrix::from_rows(rows).expect("equal row widths"))
}
