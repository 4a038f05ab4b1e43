//! Enumeration caps shared by the exhaustive routines.
//!
//! Every cap can be overridden at once through the `WIRETAP_NC_ENUM_CAP`
//! environment variable.

pub const ENV_OVERRIDE: &str = "WIRETAP_NC_ENUM_CAP";

/// Joint-distribution enumeration: at most this many channel words `q^n`.
pub const ORACLE_WORDS: u64 = 10_000_000;
/// Codeword enumeration for generalized Hamming weights (`q^k`).
pub const GHW_CODEWORDS: u64 = 1_000_000;
/// Column subsets examined by the MDS check.
pub const MDS_SUBSETS: u64 = 1_000_000;
/// Subset rank checks performed by one secure-LIF or verification run.
pub const SUBSET_CHECKS: u64 = 10_000_000;

/// Returns `default` unless the environment override is set to an integer.
pub fn cap(default: u64) -> u64 {
    std::env::var(ENV_OVERRIDE)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// `base^exp`, saturating at `u64::MAX`.
pub fn saturating_pow(base: u64, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
