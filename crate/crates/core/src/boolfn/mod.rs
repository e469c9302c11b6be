//! Truth tables, hypercube chains and alternation.

mod alternation;
mod family;
mod format;
mod table;

pub use alternation::{
    alt_profile, alternation, alternation_bruteforce, decrease, is_monotone,
    is_uniform_alternation, min_alternation, AltProfile, BRUTEFORCE_MAX_N,
};
pub use family::{family, Family};
pub(crate) use format::parse_arity_header;
pub use table::{eval, Assignment, Chain, TruthTable, DEFAULT_MAX_N, MAX_ARITY};

/// `⌈log2(k + 1)⌉`: the optimal monotone tree height for alternation `k`.
pub fn ceil_log2_plus1(k: usize) -> usize {
    (usize::BITS - k.leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    #[test]
    fn ceil_log() {
        let expect = [0, 1, 2, 2, 3, 3, 3, 3, 4];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(super::ceil_log2_plus1(k), e);
        }
    }
}
