//! Exact binomial coefficients.

/// `C(n, k)` as an exact `u128`. Panics on overflow, which cannot happen for
/// the `k <= 12` and `n <= 2^16` used throughout the crate.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul(u128::from(n - i)).expect("binomial overflow") / u128::from(i + 1);
    }
    acc
}

/// `C(n, k)` narrowed to `u64`, saturating.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    u64::try_from(binomial(n, k)).unwrap_or(u64::MAX)
}

/// Number of ways to choose five positions from a run of `len` consecutive
/// positions with every two chosen positions at least ten apart: the gap
/// substitution `y_i = x_i - 9 i` turns it into `C(len - 36, 5)`.
pub fn long_five_subsets(len: usize) -> u64 {
    binomial_u64(len.saturating_sub(36) as u64, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(12, 5), 792);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn pascal_rule() {
        for n in 1..60u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    /// Count 5-subsets of `0..len` with pairwise gaps >= 10 directly.
    fn long_by_enumeration(len: usize) -> u64 {
        fn rec(len: usize, from: usize, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            (from..len).map(|x| rec(len, x + 10, left - 1)).sum()
        }
        rec(len, 0, 5)
    }

    #[test]
    fn long_subsets_match_enumeration() {
        assert_eq!(long_five_subsets(36), 0);
        assert_eq!(long_five_subsets(41), 1);
        assert_eq!(long_five_subsets(46), 252);
        for len in 0..=60 {
            assert_eq!(long_five_subsets(len), long_by_enumeration(len), "len {len}");
        }
    }
}
