use itertools::Itertools;

use super::EquivError;
use crate::fmatrix::FMatrix;
use crate::limits;

/// Generalized Hamming weights `d_1..d_k` of the code generated by the rows
/// of `g`: `d_r` is the smallest support of an `r`-dimensional subcode.
///
/// Subcodes are enumerated through their reduced-echelon coefficient matrices
/// over the message space, so each subspace is visited exactly once.
pub fn generalized_hamming_weights(g: &FMatrix) -> Result<Vec<usize>, EquivError> {
    let k = g.rows();
    let n = g.cols();
    let rank = g.rank();
    if rank < k {
        return Err(EquivError::GeneratorNotFullRank { rank, rows: k });
    }
    if n > 64 {
        return Err(EquivError::TooLargeForExhaustive(format!(
            "code length {n} exceeds 64"
        )));
    }
    let q = g.field().order() as u64;
    let words = limits::saturating_pow(q, k);
    let cap = limits::cap(limits::GHW_CODEWORDS);
    if words > cap {
        return Err(EquivError::TooLargeForExhaustive(format!(
            "q^k = {words} exceeds the cap {cap}"
        )));
    }
    // support mask of every codeword, indexed by message in base q
    let f = g.field();
    let mut support = vec![0u64; words as usize];
    for (idx, slot) in support.iter_mut().enumerate() {
        let msg = digits(idx as u64, q, k);
        let mut mask = 0u64;
        for j in 0..n {
            let v = (0..k).fold(0, |acc, i| f.add(acc, f.mul(msg[i], g.get(i, j))));
            if v != 0 {
                mask |= 1 << j;
            }
        }
        *slot = mask;
    }
    let mut d = Vec::with_capacity(k);
    for r in 1..=k {
        let mut best = usize::MAX;
        for pivots in (0..k).combinations(r) {
            // free entries: positions right of each pivot that are not pivots
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|row| {
                    let pivots = &pivots;
                    (pivots[row] + 1..k)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let count = limits::saturating_pow(q, free.len());
            for assignment in 0..count {
                let values = digits(assignment, q, free.len());
                let mut mask = 0u64;
                for (row, &pc) in pivots.iter().enumerate() {
                    let mut msg = vec![0u32; k];
                    msg[pc] = 1;
                    for (&(fr, c), &v) in free.iter().zip(&values) {
                        if fr == row {
                            msg[c] = v;
                        }
                    }
                    mask |= support[index(&msg, q) as usize];
                }
                best = best.min(mask.count_ones() as usize);
            }
        }
        d.push(best);
    }
    Ok(d)
}

fn digits(mut idx: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (idx % q) as u32;
            idx /= q;
            d
        })
        .collect()
}

fn index(v: &[u32], q: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
}

/// Checks `d_{n-mu-delta} <= n - mu < d_{n-mu-delta+1}` for the code generated
/// by `g` (length `n`, dimension `k`), with `d_0 = 0` and `d_{k+1} = infinity`.
pub fn wei_consistency_check(g: &FMatrix, mu: usize, delta: usize) -> Result<bool, EquivError> {
    let d = generalized_hamming_weights(g)?;
    Ok(wei_holds(&d, g.cols(), mu, delta))
}

/// [`wei_consistency_check`] against precomputed weights `d_1..d_k`.
pub fn wei_holds(d: &[usize], n: usize, mu: usize, delta: usize) -> bool {
    if mu + delta > n {
        return false;
    }
    let r = n - mu - delta;
    if r > d.len() {
        return false;
    }
    let weight = |i: usize| {
        if i == 0 {
            Some(0)
        } else {
            d.get(i - 1).copied()
        }
    };
    let lower = weight(r).expect("r <= k");
    let upper_ok = match weight(r + 1) {
        Some(w) => n - mu < w,
        None => true,
    };
    lower <= n - mu && upper_ok
}
