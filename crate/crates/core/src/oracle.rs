//! Brute-force entropies by exhaustive enumeration.
//!
//! Every (secret, randomness) pair is pushed through the coset encoder and
//! then through the network hop by hop using local coefficients, so nothing
//! here depends on global coding vectors or rank computations.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::coset::{CosetCode, CosetError};
use crate::fmatrix::FMatrix;
use crate::limits;
use crate::netgraph::{NetError, NetworkCode};
use crate::securecode::{wiretap_pool, SecureError};

/// Entropies are snapped to integers within this distance.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("q^n = {words} channel words exceed the enumeration cap {cap}")]
    EnumerationTooLarge { words: u64, cap: u64 },
    #[error("entropy {0} is not within tolerance of an integer")]
    NotInteger(f64),
    #[error("budget mu = {mu} exceeds the {available} wiretappable edges")]
    BudgetExceedsEdges { mu: usize, available: usize },
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Secure(#[from] SecureError),
}

/// All equally likely outcomes of one coset code over one network code.
pub struct Outcomes {
    q: u64,
    k: usize,
    n: usize,
    /// (secret index, channel word index, payload per edge)
    rows: Vec<(u64, u64, Vec<u32>)>,
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

impl Outcomes {
    pub fn enumerate(h: &FMatrix, code: &NetworkCode) -> Result<Outcomes, OracleError> {
        let coset = CosetCode::new(h.clone())?;
        let q = code.field().order() as u64;
        let n = code.n();
        let words = limits::saturating_pow(q, n);
        let cap = limits::cap(limits::ORACLE_WORDS);
        if words > cap {
            return Err(OracleError::EnumerationTooLarge { words, cap });
        }
        let k = coset.k();
        let secrets = limits::saturating_pow(q, k);
        let randomness = limits::saturating_pow(q, coset.randomness());
        let rows = (0..secrets)
            .into_par_iter()
            .flat_map_iter(|s_idx| {
                let s = digits(s_idx, q, k);
                let coset = &coset;
                (0..randomness).map(move |r_idx| {
                    let r = digits(r_idx, q, coset.randomness());
                    let y = coset.encode_with(&s, &r).expect("valid symbols");
                    let payloads = code.edge_payloads(&y).expect("length n");
                    (s_idx, index(&y, q), payloads)
                })
            })
            .collect();
        Ok(Outcomes { q, k, n, rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Joint distribution of the secret and the payloads on `w`.
    pub fn joint(&self, w: &[usize]) -> JointDistribution {
        let mut counts: HashMap<(u64, Vec<u32>), u64> = HashMap::new();
        for (s, _, p) in &self.rows {
            let z: Vec<u32> = w.iter().map(|&e| p[e]).collect();
            *counts.entry((*s, z)).or_default() += 1;
        }
        JointDistribution {
            q: self.q,
            k: self.k,
            observed: w.len(),
            total: self.rows.len() as u64,
            counts,
        }
    }

    /// Entropy terms of the decomposition `H(S|Z) + H(Y|S,Z) = H(Y|Z) + H(S|Y,Z)`.
    pub fn chain_terms(&self, w: &[usize]) -> ChainTerms {
        let z_of = |p: &Vec<u32>| -> Vec<u32> { w.iter().map(|&e| p[e]).collect() };
        let mut sz: HashMap<(u64, Vec<u32>), u64> = HashMap::new();
        let mut z: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut yz: HashMap<(u64, Vec<u32>), u64> = HashMap::new();
        let mut syz: HashMap<(u64, u64, Vec<u32>), u64> = HashMap::new();
        for (s, y, p) in &self.rows {
            let zv = z_of(p);
            *sz.entry((*s, zv.clone())).or_default() += 1;
            *z.entry(zv.clone()).or_default() += 1;
            *yz.entry((*y, zv.clone())).or_default() += 1;
            *syz.entry((*s, *y, zv)).or_default() += 1;
        }
        let total = self.rows.len() as u64;
        let h = |counts: &mut dyn Iterator<Item = u64>| entropy_q(counts, total, self.q);
        let h_sz = h(&mut sz.values().copied());
        let h_z = h(&mut z.values().copied());
        let h_yz = h(&mut yz.values().copied());
        let h_syz = h(&mut syz.values().copied());
        ChainTerms {
            s_given_z: h_sz - h_z,
            y_given_sz: h_syz - h_sz,
            y_given_z: h_yz - h_z,
            s_given_yz: h_syz - h_yz,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Conditional entropies in q-ary symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainTerms {
    pub s_given_z: f64,
    pub y_given_sz: f64,
    pub y_given_z: f64,
    pub s_given_yz: f64,
}

/// Exact joint counts of `(S, Z_W)`; probabilities are `count / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    pub q: u64,
    pub k: usize,
    pub observed: usize,
    pub total: u64,
    /// Keyed by (secret index in base q, observed payloads).
    pub counts: HashMap<(u64, Vec<u32>), u64>,
}

impl JointDistribution {
    pub fn probability(&self, secret: u64, z: &[u32]) -> (u64, u64) {
        let c = self.counts.get(&(secret, z.to_vec())).copied().unwrap_or(0);
        (c, self.total)
    }
}

/// `H = log_q(total) - sum c log_q c / total` for counts summing to `total`.
fn entropy_q(counts: &mut dyn Iterator<Item = u64>, total: u64, q: u64) -> f64 {
    let ln_q = (q as f64).ln();
    let t = total as f64;
    let weighted: f64 = counts.map(|c| c as f64 * (c as f64).ln()).sum();
    ((t.ln()) - weighted / t) / ln_q
}

pub fn enumerate_joint(
    h: &FMatrix,
    code: &NetworkCode,
    w: &[usize],
) -> Result<JointDistribution, OracleError> {
    Ok(Outcomes::enumerate(h, code)?.joint(w))
}

/// `H(S | Z)` in q-ary symbols.
pub fn conditional_entropy_q(dist: &JointDistribution) -> f64 {
    let mut z: HashMap<&[u32], u64> = HashMap::new();
    for ((_, zv), &c) in &dist.counts {
        *z.entry(zv.as_slice()).or_default() += c;
    }
    let h_sz = entropy_q(&mut dist.counts.values().copied(), dist.total, dist.q);
    let h_z = entropy_q(&mut z.values().copied(), dist.total, dist.q);
    h_sz - h_z
}

/// Rounds `x` to the nearest integer if it is within [`INTEGER_TOLERANCE`].
pub fn snap(x: f64) -> Result<usize, OracleError> {
    let r = x.round();
    if (x - r).abs() > INTEGER_TOLERANCE || r < 0.0 {
        return Err(OracleError::NotInteger(x));
    }
    Ok(r as usize)
}

/// `min H(S | Z_W)` over all `W` of exactly `mu` wiretappable edges, with the
/// lexicographically first minimizer (edge sets sorted by edge id).
pub fn min_equivocation_bruteforce(
    h: &FMatrix,
    code: &NetworkCode,
    mu: usize,
    restricted: Option<&[usize]>,
) -> Result<(usize, Vec<usize>), OracleError> {
    let outcomes = Outcomes::enumerate(h, code)?;
    min_over_subsets(&outcomes, code, mu, restricted)
}

/// [`min_equivocation_bruteforce`] reusing enumerated outcomes.
pub fn min_over_subsets(
    outcomes: &Outcomes,
    code: &NetworkCode,
    mu: usize,
    restricted: Option<&[usize]>,
) -> Result<(usize, Vec<usize>), OracleError> {
    let pool = wiretap_pool(code, restricted)?;
    if mu > pool.len() {
        return Err(OracleError::BudgetExceedsEdges {
            mu,
            available: pool.len(),
        });
    }
    let subsets: Vec<Vec<usize>> = pool.into_iter().combinations(mu).collect();
    let values: Vec<Result<usize, OracleError>> = subsets
        .par_iter()
        .map(|w| snap(conditional_entropy_q(&outcomes.joint(w))))
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, i));
        }
    }
    let (value, i) = best.expect("at least one subset");
    Ok((value, subsets[i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::netgraph::{butterfly_code, parallel, ButterflyVariant};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn identity_code(f: &FieldSpec, n: usize) -> NetworkCode {
        let local = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as u32).collect())
            .collect();
        NetworkCode::from_local(parallel(n).unwrap(), n, f, local).unwrap()
    }

    #[test]
    fn repetition_code_independence() {
        let f = gf(2);
        let h = FMatrix::from_rows(&f, &[[1, 1]]).unwrap();
        let code = identity_code(&f, 2);
        let d = enumerate_joint(&h, &code, &[0]).unwrap();
        assert_eq!(d.counts.len(), 4);
        for s in 0..2 {
            for z in 0..2 {
                assert_eq!(d.probability(s, &[z]), (1, 4));
            }
        }
        assert_eq!(snap(conditional_entropy_q(&d)).unwrap(), 1);
    }

    #[test]
    fn empty_and_full_observations() {
        let f = gf(3);
        let h = FMatrix::from_rows(&f, &[[1, 2, 0]]).unwrap();
        let code = identity_code(&f, 3);
        let empty = enumerate_joint(&h, &code, &[]).unwrap();
        assert_eq!(empty.counts.len(), 3);
        assert_eq!(snap(conditional_entropy_q(&empty)).unwrap(), 1);
        let full = enumerate_joint(&h, &code, &[0, 1, 2]).unwrap();
        assert_eq!(full.counts.len(), 27);
        assert_eq!(snap(conditional_entropy_q(&full)).unwrap(), 0);
    }

    #[test]
    fn butterfly_oracle() {
        let f = gf(3);
        let h = FMatrix::from_rows(&f, &[[1, 1]]).unwrap();
        let a = butterfly_code(ButterflyVariant::Insecure, &f).unwrap();
        let be = a.network().edge_by_id("BE").unwrap();
        let d = enumerate_joint(&h, &a, &[be]).unwrap();
        assert_eq!(snap(conditional_entropy_q(&d)).unwrap(), 0);
        let (v, w) = min_equivocation_bruteforce(&h, &a, 1, None).unwrap();
        assert_eq!((v, a.network().edge_ids(&w)), (0, vec!["BE".to_string()]));
        let b = butterfly_code(ButterflyVariant::Secure, &f).unwrap();
        assert_eq!(min_equivocation_bruteforce(&h, &b, 1, None).unwrap().0, 1);
        assert_eq!(
            min_equivocation_bruteforce(&h, &b, 0, None).unwrap(),
            (1, vec![])
        );
    }

    #[test]
    fn chain_rule_and_observation_rank() {
        let f = gf(3);
        let h = FMatrix::from_rows(&f, &[[1, 1]]).unwrap();
        for v in [ButterflyVariant::Insecure, ButterflyVariant::Secure] {
            let code = butterfly_code(v, &f).unwrap();
            let out = Outcomes::enumerate(&h, &code).unwrap();
            for mu in 0..=3 {
                for w in (0..code.network().edge_count()).combinations(mu) {
                    let t = out.chain_terms(&w);
                    assert!((t.s_given_z + t.y_given_sz - t.y_given_z - t.s_given_yz).abs() < 1e-9);
                    assert_eq!(snap(t.s_given_yz).unwrap(), 0);
                    let rank = code.coding_matrix(&w).rank();
                    assert_eq!(snap(t.y_given_z).unwrap(), 2 - rank);
                }
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let f = gf(7);
        let code = identity_code(&f, 9);
        let h = FMatrix::from_rows(&f, &[[1, 1, 1, 1, 1, 1, 1, 1, 1]]).unwrap();
        assert!(matches!(
            Outcomes::enumerate(&h, &code),
            Err(OracleError::EnumerationTooLarge {
                words: 40_353_607,
                ..
            })
        ));
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(2.0000000001).unwrap(), 2);
        assert!(matches!(snap(0.5), Err(OracleError::NotInteger(_))));
    }
}
