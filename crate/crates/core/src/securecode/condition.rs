use itertools::Itertools;
use rayon::prelude::*;

use super::SecureError;
use crate::fmatrix::FMatrix;
use crate::limits;
use crate::netgraph::{NetError, NetworkCode};

/// Outcome of a subset-enumerating security check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyCheck {
    pub secure: bool,
    /// First violating edge set, as edge indices sorted by edge id.
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

/// Edges the wiretapper may choose from, sorted by edge id.
pub fn wiretap_pool(
    code: &NetworkCode,
    restricted: Option<&[usize]>,
) -> Result<Vec<usize>, SecureError> {
    let net = code.network();
    let mut pool = match restricted {
        Some(r) => {
            if let Some(&bad) = r.iter().find(|&&e| e >= net.edge_count()) {
                return Err(NetError::UnknownEdge(format!("#{bad}")).into());
            }
            let mut p = r.to_vec();
            p.sort_unstable();
            p.dedup();
            p
        }
        None => (0..net.edge_count()).collect(),
    };
    net.sort_by_id(&mut pool);
    Ok(pool)
}

/// Checks `rank [H; C_W] = k + |W|` for every `W` of at most `mu` edges with
/// `rank C_W = |W|`. Subsets are visited by size, then lexicographically.
pub fn verify_secrecy_condition(
    h: &FMatrix,
    code: &NetworkCode,
    mu: usize,
    restricted: Option<&[usize]>,
) -> Result<SecrecyCheck, SecureError> {
    check_inputs(h, code, mu, h.cols(), "H")?;
    let pool = wiretap_pool(code, restricted)?;
    let k = h.rows();
    scan(&pool, mu, |w| {
        let c = code.coding_matrix(w);
        if c.rank() < w.len() {
            return None;
        }
        Some(h.stack(&c).expect("widths agree").rank() == k + w.len())
    })
}

/// Security check for a coset code cascaded with a network error-correcting
/// code with `n x m` generator `G`: `rank [H; C_W G] = k + |W|` for every `W`
/// with `rank C_W = |W| <= mu`. With `G = I` this is
/// [`verify_secrecy_condition`].
pub fn byzantine_secrecy_check(
    h: &FMatrix,
    g: &FMatrix,
    code: &NetworkCode,
    mu: usize,
) -> Result<SecrecyCheck, SecureError> {
    if g.rows() != code.n() {
        return Err(SecureError::DimensionMismatch(format!(
            "generator has {} rows, network carries n = {}",
            g.rows(),
            code.n()
        )));
    }
    if g.field() != code.field() {
        return Err(SecureError::DimensionMismatch(format!(
            "generator is over {} but the network code over {}",
            g.field(),
            code.field()
        )));
    }
    check_inputs(h, code, mu, g.cols(), "H against G")?;
    let pool = wiretap_pool(code, None)?;
    let k = h.rows();
    scan(&pool, mu, |w| {
        let c = code.coding_matrix(w);
        if c.rank() < w.len() {
            return None;
        }
        let cg = c.mul_mat(g).expect("inner dimensions agree");
        Some(h.stack(&cg).expect("widths agree").rank() == k + w.len())
    })
}

fn check_inputs(
    h: &FMatrix,
    code: &NetworkCode,
    mu: usize,
    width: usize,
    what: &str,
) -> Result<(), SecureError> {
    if h.cols() != width {
        return Err(SecureError::DimensionMismatch(format!(
            "{what}: H has {} columns, expected {width}",
            h.cols()
        )));
    }
    if h.field() != code.field() {
        return Err(SecureError::DimensionMismatch(format!(
            "H is over {} but the network code over {}",
            h.field(),
            code.field()
        )));
    }
    if mu > code.n() {
        return Err(SecureError::BudgetExceedsCut { mu, n: code.n() });
    }
    let rank = h.rank();
    if rank < h.rows() {
        return Err(crate::coset::CosetError::RankDeficient {
            rank,
            rows: h.rows(),
        }
        .into());
    }
    Ok(())
}

const CHUNK: usize = 4096;

/// Visits subsets of `pool` of sizes `1..=mu` in order and returns the first
/// one for which `test` yields `Some(false)`. `None` marks a skipped subset.
pub(crate) fn scan<F>(pool: &[usize], mu: usize, test: F) -> Result<SecrecyCheck, SecureError>
where
    F: Fn(&[usize]) -> Option<bool> + Sync,
{
    let total: u64 = (1..=mu.min(pool.len()))
        .map(|s| limits::binomial(pool.len(), s))
        .fold(0u64, u64::saturating_add);
    let cap = limits::cap(limits::SUBSET_CHECKS);
    if total > cap {
        return Err(SecureError::ComplexityCapExceeded { checks: total, cap });
    }
    let mut checked = 0u64;
    for size in 1..=mu.min(pool.len()) {
        let mut subsets = pool.iter().copied().combinations(size).peekable();
        while subsets.peek().is_some() {
            let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
            let hit = chunk.par_iter().position_first(|w| test(w) == Some(false));
            match hit {
                Some(i) => {
                    return Ok(SecrecyCheck {
                        secure: false,
                        witness: Some(chunk[i].clone()),
                        subsets_checked: checked + i as u64 + 1,
                    })
                }
                None => checked += chunk.len() as u64,
            }
        }
    }
    Ok(SecrecyCheck {
        secure: true,
        witness: None,
        subsets_checked: checked,
    })
}
