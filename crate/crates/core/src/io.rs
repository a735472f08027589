//! Line-oriented matrix text format.
//!
//! ```text
//! 4
//! 0000
//! 0101
//! 0011
//! 0110
//! ```
//!
//! The first line is the decimal order `n`, followed by `n` rows of exactly
//! `n` characters. Rows use either `0`/`1` or `+`/`-` (`+` is 0, `-` is 1);
//! the first row fixes the alphabet for the file. Trailing blank lines are
//! tolerated, anything else is an error.

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alphabet {
    #[default]
    Binary,
    PlusMinus,
}

impl Alphabet {
    fn symbols(self) -> (char, char) {
        match self {
            Alphabet::Binary => ('0', '1'),
            Alphabet::PlusMinus => ('+', '-'),
        }
    }

    fn detect(c: char) -> Option<Self> {
        match c {
            '0' | '1' => Some(Alphabet::Binary),
            '+' | '-' => Some(Alphabet::PlusMinus),
            _ => None,
        }
    }
}

pub fn read_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));

    let (_, header) = lines.next().expect("split yields at least one item");
    if header.is_empty() || !header.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            1,
            format!("expected decimal order, found {header:?}"),
        ));
    }
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(1, format!("order {header:?} out of range")))?;
    if n == 0 {
        return Err(Error::parse(1, "order must be positive"));
    }

    let mut alphabet = None;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((line_no, line)) = lines.next() else {
            let expected = n + 1;
            return Err(Error::parse(
                expected,
                format!("missing row; expected {n} rows"),
            ));
        };
        let chars: Vec<char> = line.chars().collect();
        if chars.len() != n {
            return Err(Error::parse(
                line_no,
                format!("expected {n} characters, found {}", chars.len()),
            ));
        }
        let alpha = *alphabet.get_or_insert_with(|| Alphabet::detect(chars[0]).unwrap_or_default());
        let (zero, one) = alpha.symbols();
        let mut row = BitVector::zeros(n);
        for (j, &c) in chars.iter().enumerate() {
            if c == one {
                row.set(j, true);
            } else if c != zero {
                return Err(Error::parse(
                    line_no,
                    format!("illegal character {c:?} at column {}", j + 1),
                ));
            }
        }
        rows.push(row);
    }

    for (line_no, line) in lines {
        if !line.trim().is_empty() {
            return Err(Error::parse(line_no, "unexpected content after last row"));
        }
    }
    BinaryMatrix::from_rows(rows)
}

pub fn write_matrix(m: &BinaryMatrix, alphabet: Alphabet) -> String {
    let (zero, one) = alphabet.symbols();
    let mut out = String::with_capacity((m.ncols() + 1) * (m.nrows() + 1));
    out.push_str(&m.nrows().to_string());
    out.push('\n');
    for row in m.rows() {
        out.extend(row.iter().map(|b| if b { one } else { zero }));
        out.push('\n');
    }
    out
}
