use itertools::Itertools;

use super::{alphabet_bound_general, SecureDesign, SecureError, SecurityParams};
use crate::coset::{CosetCode, CosetError};
use crate::fmatrix::FMatrix;
use crate::limits;
use crate::netgraph::{Network, NetworkCode};

/// Greedy linear-information-flow construction with a security constraint.
///
/// Edges are coded in topological order. At edge `e` the local coefficient
/// vectors are tried lexicographically (first coordinate most significant)
/// and the first one is kept that
///
/// * leaves every receiver's current flow matrix invertible, and
/// * keeps `rank [H; C_W] = k + |W|` for every `W = {e} + W'` where `W'` is a
///   set of at most `mu - 1` already coded edges and `rank C_W = |W|`.
///
/// Edges on no flow receive the zero vector.
pub fn secure_lif(
    net: &Network,
    n: usize,
    mu: usize,
    h: &FMatrix,
) -> Result<SecureDesign, SecureError> {
    let field = h.field().clone();
    let k = h.rows();
    if h.cols() != n {
        return Err(SecureError::DimensionMismatch(format!(
            "H has {} columns, expected n = {n}",
            h.cols()
        )));
    }
    if mu > n {
        return Err(SecureError::BudgetExceedsCut { mu, n });
    }
    if k + mu > n {
        return Err(SecureError::BadParameters(format!(
            "k + mu = {} exceeds n = {n}",
            k + mu
        )));
    }
    let rank = h.rank();
    if rank < k {
        return Err(CosetError::RankDeficient { rank, rows: k }.into());
    }
    let flows = net.edge_disjoint_flows(n)?;

    // membership[e] = (flow, path) pairs whose path uses e
    let mut membership = vec![Vec::new(); net.edge_count()];
    for (j, flow) in flows.iter().enumerate() {
        for (p, path) in flow.paths.iter().enumerate() {
            for &e in path {
                membership[e].push((j, p));
            }
        }
    }
    // frontier[j][p]: global vector of the latest coded edge on path p of flow j
    let mut frontier: Vec<Vec<Vec<u32>>> = flows
        .iter()
        .map(|_| {
            (0..n)
                .map(|p| (0..n).map(|i| (i == p) as u32).collect())
                .collect()
        })
        .collect();

    let q = field.order() as u64;
    let cap = limits::cap(limits::SUBSET_CHECKS);
    let mut checks = 0u64;
    let mut local: Vec<Vec<u32>> = vec![Vec::new(); net.edge_count()];
    let mut global: Vec<Vec<u32>> = vec![vec![0; n]; net.edge_count()];
    let mut processed: Vec<usize> = Vec::new();

    for &e in net.topological_order() {
        let arity = NetworkCode::local_arity(net, n, e);
        let candidates = limits::saturating_pow(q, arity);
        let mut chosen = None;
        for idx in 0..candidates {
            let coeffs = lex_vector(idx, q, arity);
            let g = crate::netgraph::global_from_local(net, &field, n, e, &coeffs, &global);
            let keeps_flows = membership[e].iter().all(|&(j, p)| {
                let mut rows = frontier[j].clone();
                rows[p] = g.clone();
                FMatrix::from_rows(&field, &rows).expect("n x n").rank() == n
            });
            if !keeps_flows {
                continue;
            }
            let (secure, used) = secure_with(
                h,
                &field,
                &g,
                &processed,
                &global,
                mu,
                cap - checks.min(cap),
            )?;
            checks += used;
            if secure {
                chosen = Some((coeffs, g));
                break;
            }
        }
        let Some((coeffs, g)) = chosen else {
            let bound = alphabet_bound_general(net.edge_count(), mu, net.receivers().len());
            return Err(SecureError::FieldTooSmall {
                q: field.order(),
                detail: format!(
                    "no admissible coefficients for edge `{}`; q >= {bound} always suffices",
                    net.edge(e).id
                ),
            });
        };
        for &(j, p) in &membership[e] {
            frontier[j][p] = g.clone();
        }
        local[e] = coeffs;
        global[e] = g;
        processed.push(e);
    }

    let netcode = NetworkCode::from_local(net.clone(), n, &field, local)?;
    let coset = CosetCode::new(h.clone())?;
    let params = SecurityParams {
        mu,
        k,
        n,
        restricted: None,
    };
    let design = SecureDesign::certify(coset, netcode, params, "secure-lif", checks)?;
    assert!(
        design.is_valid(),
        "secure LIF produced a code that fails re-verification: {:?}",
        design.certificate
    );
    Ok(design)
}

/// Digits of `idx` in base `q`, most significant first.
fn lex_vector(mut idx: u64, q: u64, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % q) as u32;
        idx /= q;
    }
    v
}

/// Checks the security constraint for candidate vector `g`. Returns the
/// verdict and the number of subsets examined.
fn secure_with(
    h: &FMatrix,
    field: &crate::gf::FieldSpec,
    g: &[u32],
    processed: &[usize],
    global: &[Vec<u32>],
    mu: usize,
    budget: u64,
) -> Result<(bool, u64), SecureError> {
    if mu == 0 || g.iter().all(|&x| x == 0) {
        return Ok((true, 0));
    }
    let k = h.rows();
    let mut used = 0u64;
    for size in 0..mu.min(processed.len() + 1) {
        for rest in processed.iter().combinations(size) {
            used += 1;
            if used > budget {
                return Err(SecureError::ComplexityCapExceeded {
                    checks: used,
                    cap: limits::cap(limits::SUBSET_CHECKS),
                });
            }
            let mut rows: Vec<&[u32]> = rest.iter().map(|&&e| global[e].as_slice()).collect();
            rows.push(g);
            let c = FMatrix::from_rows(field, &rows).expect("rows of length n");
            if c.rank() < rows.len() {
                continue;
            }
            if h.stack(&c).expect("widths agree").rank() < k + rows.len() {
                return Ok((false, used));
            }
        }
    }
    Ok((true, used))
}
