use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// Exact `num / 2^exp`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u128,
    exp: u32,
}

/// Denominators beyond `2^MAX_EXP` are not representable.
pub const MAX_EXP: u32 = 100;

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    pub fn new(num: u128, exp: u32) -> Self {
        assert!(exp <= MAX_EXP, "denominator 2^{exp} too large");
        let mut d = Dyadic { num, exp };
        d.reduce();
        d
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// `self / 2^k`.
    pub fn halve(self, k: u32) -> Self {
        Dyadic::new(self.num, self.exp + k)
    }

    /// `self ≥ a/b` for a positive denominator `b`.
    pub fn ge_ratio(&self, a: u128, b: u128) -> bool {
        assert!(b > 0);
        self.num * b >= a << self.exp
    }

    /// `self ≤ a/b` for a positive denominator `b`.
    pub fn le_ratio(&self, a: u128, b: u128) -> bool {
        assert!(b > 0);
        self.num * b <= a << self.exp
    }

    pub fn complement(self) -> Self {
        assert!(self <= Dyadic::ONE, "complement of a value above 1");
        Dyadic::new((1u128 << self.exp) - self.num, self.exp)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (self.exp as f64).exp2()
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        Dyadic::new(
            (self.num << (exp - self.exp)) + (rhs.num << (exp - rhs.exp)),
            exp,
        )
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, Add::add)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        (self.num << (exp - self.exp)).cmp(&(other.num << (exp - other.exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u128 << self.exp)
        }
    }
}
