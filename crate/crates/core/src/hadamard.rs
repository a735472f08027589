//! Hadamard matrices in `{0,1}` form.
//!
//! A square binary matrix of order `n` is Hadamard when `n` is 1, 2 or a
//! multiple of 4 and every pair of distinct rows differs in exactly `n/2`
//! coordinates. In `±1` form that is the same as `HHᵀ = nI`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::sylvester_product;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};

/// Largest exponent accepted by [`sylvester_power`].
pub const MAX_SYLVESTER_POWER: u32 = 12;

/// Largest order produced by the built-in generators.
pub const MAX_GENERATED_ORDER: usize = 1 << MAX_SYLVESTER_POWER;

/// True when a Hadamard matrix of order `n` is not ruled out by the order condition.
pub fn is_valid_order(n: usize) -> bool {
    n == 1 || n == 2 || (n > 0 && n.is_multiple_of(4))
}

/// Why a candidate matrix fails to be Hadamard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    InvalidOrder(usize),
    /// First pair of rows (in lexicographic index order) whose distance is not `n/2`.
    RowDistance {
        first: usize,
        second: usize,
        distance: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Violation::InvalidOrder(n) => write!(f, "order {n} is not 1, 2 or a multiple of 4"),
            Violation::RowDistance {
                first,
                second,
                distance,
            } => write!(f, "rows {first} and {second} are at distance {distance}"),
        }
    }
}

/// Returns the first reason `m` is not Hadamard, or `None` if it is.
pub fn find_violation(m: &BinaryMatrix) -> Option<Violation> {
    if !m.is_square() {
        return Some(Violation::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if !is_valid_order(n) {
        return Some(Violation::InvalidOrder(n));
    }
    let half = n / 2;
    let rows = m.rows();
    for i in 0..n {
        for j in i + 1..n {
            let d = rows[i].distance_unchecked(&rows[j]);
            if d != half {
                return Some(Violation::RowDistance {
                    first: i,
                    second: j,
                    distance: d,
                });
            }
        }
    }
    None
}

pub fn is_hadamard(m: &BinaryMatrix) -> bool {
    find_violation(m).is_none()
}

/// A binary matrix certified to be Hadamard.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HadamardMatrix {
    mat: BinaryMatrix,
}

impl HadamardMatrix {
    pub fn new(mat: BinaryMatrix) -> Result<Self> {
        match find_violation(&mat) {
            None => Ok(HadamardMatrix { mat }),
            Some(v) => Err(Error::InvalidInput(format!("not a Hadamard matrix: {v}"))),
        }
    }

    /// Wraps a matrix produced by one of the constructions, which are
    /// Hadamard by theorem. Checked in debug builds.
    pub(crate) fn from_construction(mat: BinaryMatrix) -> Self {
        debug_assert!(
            is_hadamard(&mat),
            "construction produced a non-Hadamard matrix"
        );
        HadamardMatrix { mat }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.mat.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.mat.get(i, j)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        self.mat.row(i)
    }

    pub fn rows(&self) -> &[BitVector] {
        self.mat.rows()
    }

    pub fn as_matrix(&self) -> &BinaryMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> BinaryMatrix {
        self.mat
    }

    /// First row and first column are all zero.
    pub fn is_normalized(&self) -> bool {
        self.mat.row(0).is_zero() && (0..self.order()).all(|i| !self.mat.get(i, 0))
    }
}

impl TryFrom<BinaryMatrix> for HadamardMatrix {
    type Error = Error;

    fn try_from(mat: BinaryMatrix) -> Result<Self> {
        HadamardMatrix::new(mat)
    }
}

impl std::fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HadamardMatrix{:?}", self.mat)
    }
}

/// Complements every column whose first-row entry is 1, then every row whose
/// first-column entry is 1.
pub fn normalize(h: &HadamardMatrix) -> HadamardMatrix {
    let mut mat = h.mat.clone();
    let col_mask = mat.row(0).clone();
    for row in mat.rows_mut() {
        row.xor_assign(&col_mask)
            .expect("rows share the matrix width");
    }
    for row in mat.rows_mut() {
        if row.get(0) {
            row.complement_in_place();
        }
    }
    HadamardMatrix::from_construction(mat)
}

/// Row and column permutations combined with row and column complementations.
///
/// Applied to `H`, entry `(i, j)` of the result is
/// `H[row_perm[i]][col_perm[j]] + row_flips[i] + col_flips[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceTransform {
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    row_flips: BitVector,
    col_flips: BitVector,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl EquivalenceTransform {
    pub fn new(
        row_perm: Vec<usize>,
        col_perm: Vec<usize>,
        row_flips: BitVector,
        col_flips: BitVector,
    ) -> Result<Self> {
        let n = row_perm.len();
        for len in [col_perm.len(), row_flips.len(), col_flips.len()] {
            if len != n {
                return Err(Error::dimension(n, len));
            }
        }
        if !is_permutation(&row_perm) || !is_permutation(&col_perm) {
            return Err(Error::InvalidInput(
                "transform permutations must be bijections".into(),
            ));
        }
        Ok(EquivalenceTransform {
            row_perm,
            col_perm,
            row_flips,
            col_flips,
        })
    }

    pub fn identity(n: usize) -> Self {
        EquivalenceTransform {
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
            row_flips: BitVector::zeros(n),
            col_flips: BitVector::zeros(n),
        }
    }

    /// Uniform permutations and independent fair flips.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        row_perm.shuffle(rng);
        col_perm.shuffle(rng);
        let row_flips = BitVector::from_fn(n, |_| rng.gen());
        let col_flips = BitVector::from_fn(n, |_| rng.gen());
        EquivalenceTransform {
            row_perm,
            col_perm,
            row_flips,
            col_flips,
        }
    }

    pub fn order(&self) -> usize {
        self.row_perm.len()
    }
}

pub fn apply_transform(h: &HadamardMatrix, t: &EquivalenceTransform) -> Result<HadamardMatrix> {
    let n = h.order();
    if t.order() != n {
        return Err(Error::dimension(n, t.order()));
    }
    let mat = BinaryMatrix::from_fn(n, n, |i, j| {
        h.get(t.row_perm[i], t.col_perm[j]) ^ t.row_flips.get(i) ^ t.col_flips.get(j)
    });
    Ok(HadamardMatrix::from_construction(mat))
}

/// The Sylvester matrix of order `2^t`, `t ≤ MAX_SYLVESTER_POWER`.
pub fn sylvester_power(t: u32) -> Result<HadamardMatrix> {
    sylvester_power_with_limit(t, MAX_SYLVESTER_POWER)
}

pub fn sylvester_power_with_limit(t: u32, max_t: u32) -> Result<HadamardMatrix> {
    if t > max_t {
        return Err(Error::ResourceLimit(format!(
            "Sylvester exponent {t} exceeds the limit of {max_t}"
        )));
    }
    let h1 = HadamardMatrix::from_construction(BinaryMatrix::zeros(1, 1));
    let h2 =
        HadamardMatrix::from_construction(BinaryMatrix::from_fn(2, 2, |i, j| i == 1 && j == 1));
    let mut h = h1;
    for _ in 0..t {
        h = sylvester_product(&h, &h2);
    }
    Ok(h)
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley type I matrix of order `q + 1` for a prime `q ≡ 3 (mod 4)`.
///
/// Off the border, entry `(i, j)` with `i ≠ j` is 1 exactly when `j - i` is a
/// quadratic non-residue mod `q`; the diagonal is 0, the first row 0 and the
/// rest of the first column 1. The result is then normalized.
pub fn paley_i(q: u64) -> Result<HadamardMatrix> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "Paley I requires a prime q with q = 3 mod 4, got {q}"
        )));
    }
    let n = q as usize + 1;
    if n > MAX_GENERATED_ORDER {
        return Err(Error::ResourceLimit(format!(
            "Paley I order {n} exceeds the limit of {MAX_GENERATED_ORDER}"
        )));
    }
    let qs = q as usize;
    let mut residue = vec![false; qs];
    for x in 1..qs {
        residue[x * x % qs] = true;
    }
    let mat = BinaryMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, _) => false,
        (_, 0) => true,
        _ if i == j => false,
        _ => !residue[(j + qs - i) % qs],
    });
    Ok(normalize(&HadamardMatrix::new(mat)?))
}
