//! Exact equivocation of a wiretapper that observes more edges than the code
//! was designed for.
//!
//! For an observation `W` with `rank C_W = r`, complete `C_W` to an invertible
//! `A_W = [C_W; C_W^perp]`. Then `H(S | Z_W) = rank(H A_W^-1 J)` in q-ary
//! symbols, where `J` keeps the last `n - r` columns of `A_W^-1`.

mod ghw;

pub use ghw::{generalized_hamming_weights, wei_consistency_check, wei_holds};

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fmatrix::{FMatrix, MatrixError};
use crate::limits;
use crate::netgraph::NetworkCode;
use crate::securecode::{wiretap_pool, SecureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("budget mu = {mu} exceeds the {available} wiretappable edges")]
    BudgetExceedsEdges { mu: usize, available: usize },
    #[error("bad budgets: {0}")]
    BadBudgets(String),
    #[error("cut coding matrix is not invertible (rank {rank} of {size})")]
    CutNotInvertible { rank: usize, size: usize },
    #[error("generator has rank {rank} but {rows} rows")]
    GeneratorNotFullRank { rank: usize, rows: usize },
    #[error("too large for exhaustive enumeration: {0}")]
    TooLargeForExhaustive(String),
    #[error("{subsets} edge subsets exceed the cap {cap}")]
    TooManySubsets { subsets: u64, cap: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Secure(#[from] SecureError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Minimum equivocation over observations of exactly `mu` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEquivocation {
    pub delta: usize,
    /// Lexicographically first minimizing edge set, sorted by edge id.
    pub witness: Vec<usize>,
    /// Set when no `mu` edges have independent coding vectors; the minimum is
    /// then taken over observations of the largest achievable rank.
    pub rank_deficient: bool,
    pub observed_rank: usize,
}

/// An invertible `n x n` matrix whose first rows are the (independent) rows of
/// `c`. The null-space basis of `c` is used when it completes `c`; otherwise
/// the unit vectors at the non-pivot columns of `rref(c)`.
pub fn completion(c: &FMatrix) -> FMatrix {
    let perp = c.null_space_basis();
    let candidate = c.stack(&perp).expect("same width");
    if candidate.rank() == c.cols() {
        return candidate;
    }
    let pivots = c.rref().pivots;
    let mut units = FMatrix::zeros(c.field(), c.cols() - pivots.len(), c.cols());
    for (row, col) in (0..c.cols()).filter(|j| !pivots.contains(j)).enumerate() {
        units.set(row, col, 1);
    }
    c.stack(&units).expect("same width")
}

/// `rank(H A^-1 J)` for an observation with independent coding vectors `c`.
pub fn observation_equivocation(h: &FMatrix, c: &FMatrix) -> Result<usize, MatrixError> {
    let r = c.rows();
    let a_inv = completion(c).invert()?;
    let hidden: Vec<usize> = (r..c.cols()).collect();
    let tail = a_inv.transpose().select_rows(&hidden)?.transpose();
    Ok(h.mul_mat(&tail)?.rank())
}

fn check_pair(h: &FMatrix, code: &NetworkCode) -> Result<(), EquivError> {
    if h.cols() != code.n() || h.field() != code.field() {
        return Err(EquivError::DimensionMismatch(format!(
            "H is {}x{} over {}, network code has n = {} over {}",
            h.rows(),
            h.cols(),
            h.field(),
            code.n(),
            code.field()
        )));
    }
    Ok(())
}

/// Independent rows of `c` (the first basis found scanning top to bottom).
fn basis_rows(c: &FMatrix) -> Vec<usize> {
    c.transpose().rref().pivots
}

/// Minimum over `W` of `mu` edges (from `restricted` if given) of the rank
/// formula, with the lexicographically first minimizer.
pub fn equivocation_rank(
    h: &FMatrix,
    code: &NetworkCode,
    mu: usize,
    restricted: Option<&[usize]>,
) -> Result<RankEquivocation, EquivError> {
    check_pair(h, code)?;
    let pool = wiretap_pool(code, restricted)?;
    if mu > pool.len() {
        return Err(EquivError::BudgetExceedsEdges {
            mu,
            available: pool.len(),
        });
    }
    let subsets = limits::binomial(pool.len(), mu);
    let cap = limits::cap(limits::SUBSET_CHECKS);
    if subsets > cap {
        return Err(EquivError::TooManySubsets { subsets, cap });
    }
    let observations: Vec<(Vec<usize>, FMatrix, usize)> = pool
        .iter()
        .copied()
        .combinations(mu)
        .map(|w| {
            let c = code.coding_matrix(&w);
            let r = c.rank();
            (w, c, r)
        })
        .collect();
    let r_max = observations.iter().map(|o| o.2).max().unwrap_or(0);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (w, c, r) in &observations {
        if *r != r_max {
            continue;
        }
        let basis = c.select_rows(&basis_rows(c))?;
        let delta = observation_equivocation(h, &basis)?;
        if best.as_ref().is_none_or(|(d, _)| delta < *d) {
            best = Some((delta, w.clone()));
        }
    }
    let (delta, witness) = best.expect("at least the empty observation exists");
    Ok(RankEquivocation {
        delta,
        witness,
        rank_deficient: r_max < mu,
        observed_rank: r_max,
    })
}

/// Equivocation of the wiretap channel of type II with parity check `H`:
/// the minimum rank of `H` restricted to `n - mu` columns.
pub fn equivocation_wtc2(h: &FMatrix, mu: usize) -> usize {
    let n = h.cols();
    if mu >= n {
        return 0;
    }
    (0..n)
        .combinations(n - mu)
        .map(|u| h.submatrix_columns(&u).expect("valid columns").rank())
        .min()
        .unwrap_or(0)
}

/// Leak of a design secure against `lambda` edges when `mu >= lambda` are
/// tapped: `k - (mu - lambda)`, floored at zero.
pub fn equivocation_underestimated(
    k: usize,
    lambda: usize,
    mu: usize,
) -> Result<usize, EquivError> {
    let n = k + lambda;
    if mu < lambda || mu > n {
        return Err(EquivError::BadBudgets(format!(
            "need lambda <= mu <= n, got lambda = {lambda}, mu = {mu}, n = {n}"
        )));
    }
    Ok(k.saturating_sub(mu - lambda))
}

/// Equivocation when the wiretapper is confined to a cut `cut` of `n` edges
/// with invertible coding matrix `C`. The cut carries `Z = C Y`, so the
/// secret is `H C^-1 Z` and the answer is the type II channel equivocation of
/// `H C^-1`.
pub fn equivocation_restricted_cut(
    h: &FMatrix,
    code: &NetworkCode,
    cut: &[usize],
    mu: usize,
) -> Result<usize, EquivError> {
    check_pair(h, code)?;
    let c = code.coding_matrix(cut);
    let rank = c.rank();
    if c.rows() != code.n() || rank < code.n() {
        return Err(EquivError::CutNotInvertible {
            rank,
            size: c.rows(),
        });
    }
    if mu > cut.len() {
        return Err(EquivError::BudgetExceedsEdges {
            mu,
            available: cut.len(),
        });
    }
    Ok(equivocation_wtc2(&h.mul_mat(&c.invert()?)?, mu))
}

/// `d_r`: the fewest tapped edges that leak `r` symbols, for `r = 0..=k`.
/// Values of `k - r` that the equivocation skips are absent.
pub fn dr_profile(delta: &BTreeMap<usize, usize>, k: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in 0..=k {
        if let Some((&mu, _)) = delta.iter().find(|(_, &d)| d == k - r) {
            out.insert(r, mu);
        }
    }
    out
}

/// Equivocation sweep over `mu = 0..=mu_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivocationReport {
    pub delta: BTreeMap<usize, usize>,
    pub witness: BTreeMap<usize, Vec<String>>,
    pub d_profile: BTreeMap<usize, usize>,
    pub method: String,
    /// Budgets at which no observation of full rank exists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rank_deficient: Vec<usize>,
}

pub fn sweep(
    h: &FMatrix,
    code: &NetworkCode,
    mu_max: usize,
    restricted: Option<&[usize]>,
) -> Result<EquivocationReport, EquivError> {
    let mut report = EquivocationReport {
        delta: BTreeMap::new(),
        witness: BTreeMap::new(),
        d_profile: BTreeMap::new(),
        method: "rank".into(),
        rank_deficient: Vec::new(),
    };
    for mu in 0..=mu_max {
        let r = equivocation_rank(h, code, mu, restricted)?;
        report.delta.insert(mu, r.delta);
        report
            .witness
            .insert(mu, code.network().edge_ids(&r.witness));
        if r.rank_deficient {
            report.rank_deficient.push(mu);
        }
    }
    report.d_profile = dr_profile(&report.delta, h.rows());
    Ok(report)
}

/// `d_r` for every `r`, sweeping all budgets up to the number of wiretappable edges.
pub fn network_dr_profile(
    h: &FMatrix,
    code: &NetworkCode,
    restricted: Option<&[usize]>,
) -> Result<BTreeMap<usize, usize>, EquivError> {
    let available = wiretap_pool(code, restricted)?.len();
    Ok(sweep(h, code, available, restricted)?.d_profile)
}
