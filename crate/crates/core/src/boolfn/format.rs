//! Text format for truth tables.
//!
//! ```text
//! n=2
//! 6
//! ```
//!
//! The second line is the table read as a `2^n`-bit number (bit `idx` is
//! `f` at index `idx`), written in hex with the most significant digit
//! first and zero-padded to `⌈2^n / 4⌉` digits.

use super::table::{TruthTable, MAX_ARITY};
use crate::error::{Error, Result};

impl TruthTable {
    pub fn hex_digits(n: usize) -> usize {
        (1usize << n).div_ceil(4)
    }

    pub fn to_hex(&self) -> String {
        let digits = Self::hex_digits(self.arity());
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut v = 0u32;
            for b in 0..4 {
                let idx = 4 * d + b;
                if idx < self.len() && self.get(idx) {
                    v |= 1 << b;
                }
            }
            s.push(char::from_digit(v, 16).expect("nibble"));
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge { n, max: MAX_ARITY });
        }
        let hex = hex.trim();
        let digits = Self::hex_digits(n);
        if hex.len() != digits {
            return Err(Error::parse(
                2,
                format!("expected {digits} hex digits for n={n}, got {}", hex.len()),
            ));
        }
        let mut t = TruthTable::zeros(n)?;
        for (pos, ch) in hex.chars().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::parse(2, format!("invalid hex digit {ch:?}")))?;
            let d = digits - 1 - pos;
            for b in 0..4 {
                if (v >> b) & 1 == 1 {
                    let idx = 4 * d + b;
                    if idx >= t.len() {
                        return Err(Error::parse(2, "bits set beyond 2^n"));
                    }
                    t.set(idx, true);
                }
            }
        }
        Ok(t)
    }

    /// Two-line file form: `n=<k>` then the hex string.
    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.arity(), self.to_hex())
    }

    /// Parses the two-line file form, rejecting arities above `max_n`.
    pub fn parse_text(text: &str, max_n: usize) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let n = parse_arity_header(header, 1)?;
        if n > max_n {
            return Err(Error::ArityTooLarge { n, max: max_n });
        }
        let body = lines
            .next()
            .ok_or_else(|| Error::parse(2, "missing hex line"))?;
        if lines.next().is_some() {
            return Err(Error::parse(3, "trailing content"));
        }
        Self::from_hex(n, body)
    }
}

pub(crate) fn parse_arity_header(field: &str, line: usize) -> Result<usize> {
    let v = field
        .strip_prefix("n=")
        .ok_or_else(|| Error::parse(line, format!("expected `n=<k>`, got {field:?}")))?;
    v.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad arity {v:?}")))
}
