use num_bigint::BigUint;

use crate::gf::{smallest_prime_power_at_least, FieldSpec, GfError};

fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        if *n < BigUint::from(i + 1) {
            return BigUint::from(0u32);
        }
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// Field size sufficient for secure LIF on any network with `edges` edges and
/// `t` receivers: `C(|E| - 1, mu - 1) + t`.
pub fn alphabet_bound_general(edges: usize, mu: usize, t: usize) -> BigUint {
    if mu == 0 || edges == 0 {
        return BigUint::from(t);
    }
    binomial_big(&BigUint::from(edges - 1), (mu - 1) as u64) + BigUint::from(t)
}

/// The general bound evaluated on a minimal network, whose encoding edges
/// number at most `2 k^3 t^2`: `C(2 k^3 t^2, mu - 1) + t`.
pub fn alphabet_bound_minimal(k: usize, mu: usize, t: usize) -> BigUint {
    if mu == 0 {
        return BigUint::from(t);
    }
    let k = BigUint::from(k);
    let t_big = BigUint::from(t);
    let edges = BigUint::from(2u32) * &k * &k * &k * &t_big * &t_big;
    binomial_big(&edges, (mu - 1) as u64) + t_big
}

/// `floor(sqrt(2t - 7/4) + 1/2) + 1`, evaluated in integers as one more than
/// the largest `a` with `(2a - 1)^2 <= 8t - 7`.
pub fn alphabet_bound_two_sources(t: u64) -> u64 {
    if t == 0 {
        return 1;
    }
    let rhs = 8 * t as u128 - 7;
    let mut a: u128 = (((2 * t) as f64).sqrt() as u128).saturating_sub(2);
    while (2 * (a + 1) - 1).pow(2) <= rhs {
        a += 1;
    }
    while a > 0 && (2 * a - 1).pow(2) > rhs {
        a -= 1;
    }
    (a + 1) as u64
}

/// Smallest field whose order is at least `bound`.
pub fn field_for_bound(bound: u64) -> Result<FieldSpec, GfError> {
    let (p, m) = smallest_prime_power_at_least(bound.max(2));
    FieldSpec::new(p, m)
}

/// Representatives of the points of the projective line over `f`:
/// `[0,1]`, `[1,0]` and `[1, a^i]` for `0 <= i <= q - 2`.
pub fn projective_line_colors(f: &FieldSpec, exclude_all_ones: bool) -> Vec<[u32; 2]> {
    let mut out = vec![[0, 1], [1, 0]];
    let a = f.primitive();
    for i in 0..(f.order() - 1) as u64 {
        let c = [1, f.pow(a, i)];
        if exclude_all_ones && c == [1, 1] {
            continue;
        }
        out.push(c);
    }
    out
}
