//! Built-in function families.

use std::fmt;
use std::str::FromStr;

use super::table::TruthTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `Th_k(x) = [wt(x) ≥ k]`, `k ∈ [0, n+1]`.
    Threshold(usize),
    Parity,
    /// `¬x_1x_2 ∨ ¬x_3x_4 ∨ … ∨ ¬x_{n-1}x_n` for even `n`; alternation `n`.
    Candidate,
    /// Indicator of a single point, given by its index.
    PointIndicator(usize),
    Const0,
    Const1,
}

pub fn family(kind: &Family, n: usize) -> Result<TruthTable> {
    match *kind {
        Family::Threshold(k) => {
            if k > n + 1 {
                return Err(Error::InvalidFamily(format!(
                    "threshold k={k} outside [0, {}]",
                    n + 1
                )));
            }
            TruthTable::from_fn(n, |idx| idx.count_ones() as usize >= k)
        }
        Family::Parity => TruthTable::from_fn(n, |idx| idx.count_ones() % 2 == 1),
        Family::Candidate => {
            if n % 2 == 1 {
                return Err(Error::InvalidFamily(format!(
                    "candidate function needs even n, got {n}"
                )));
            }
            TruthTable::from_fn(n, |idx| (0..n / 2).any(|j| (idx >> (2 * j)) & 0b11 == 0b10))
        }
        Family::PointIndicator(p) => {
            if n >= usize::BITS as usize || p >> n != 0 {
                return Err(Error::AssignmentOutOfRange { n, idx: p });
            }
            TruthTable::from_fn(n, |idx| idx == p)
        }
        Family::Const0 => TruthTable::zeros(n),
        Family::Const1 => TruthTable::ones(n),
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Threshold(k) => write!(f, "threshold:{k}"),
            Family::Parity => f.write_str("parity"),
            Family::Candidate => f.write_str("candidate"),
            Family::PointIndicator(p) => write!(f, "point:{p}"),
            Family::Const0 => f.write_str("const0"),
            Family::Const1 => f.write_str("const1"),
        }
    }
}

/// Accepts `threshold:<k>`, `parity`, `candidate`, `point:<idx>`,
/// `point:b<x_1…x_n>`, `const0`, `const1`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b.trim())),
            None => (s, None),
        };
        let number = |arg: Option<&str>| -> Result<usize> {
            let a = arg.ok_or_else(|| Error::InvalidFamily(format!("{name} needs a parameter")))?;
            if let Some(bits) = a.strip_prefix('b') {
                // x_1 first, so reverse into index order
                let mut idx = 0usize;
                for (i, c) in bits.chars().enumerate() {
                    match c {
                        '0' => {}
                        '1' if i < usize::BITS as usize => idx |= 1 << i,
                        _ => return Err(Error::InvalidFamily(format!("bad point {a:?}"))),
                    }
                }
                return Ok(idx);
            }
            a.parse()
                .map_err(|_| Error::InvalidFamily(format!("bad parameter {a:?}")))
        };
        match name.trim() {
            "threshold" | "th" => Ok(Family::Threshold(number(arg)?)),
            "parity" | "xor" => Ok(Family::Parity),
            "candidate" => Ok(Family::Candidate),
            "point" => Ok(Family::PointIndicator(number(arg)?)),
            "const0" => Ok(Family::Const0),
            "const1" => Ok(Family::Const1),
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(t: &TruthTable) -> String {
        t.to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(bits(&family(&Family::Threshold(0), 2).unwrap()), "1111");
        assert_eq!(bits(&family(&Family::Threshold(3), 2).unwrap()), "0000");
        assert_eq!(bits(&family(&Family::Candidate, 2).unwrap()), "0010");
        assert_eq!(family(&Family::Candidate, 4).unwrap().to_hex(), "4f44");
        let p = family(&Family::PointIndicator(12), 4).unwrap();
        assert_eq!(p.count_ones(), 1);
        assert!(p.get(12));
        assert_eq!(bits(&family(&Family::Parity, 2).unwrap()), "0110");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(family(&Family::Threshold(4), 2).is_err());
        assert!(family(&Family::Candidate, 3).is_err());
        assert!(family(&Family::PointIndicator(16), 4).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert!("threshold".parse::<Family>().is_err());
    }

    #[test]
    fn parse_round_trip() {
        for f in [
            Family::Threshold(2),
            Family::Parity,
            Family::Candidate,
            Family::PointIndicator(12),
            Family::Const0,
            Family::Const1,
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!(
            "point:b0011".parse::<Family>().unwrap(),
            Family::PointIndicator(12)
        );
    }
}
