//! Seeded generators of small multicast instances shared by integration tests.
#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wiretap_nc::gf::FieldSpec;
use wiretap_nc::{FMatrix, Network, NetworkCode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct DagShape {
    pub n: usize,
    pub receivers: usize,
    pub max_edges: usize,
    pub max_in_degree: usize,
}

/// Random acyclic network whose receivers all have min-cut at least `n`.
///
/// Intermediate nodes are numbered in topological order; each draws its
/// in-edges from earlier nodes (parallel edges allowed). Receivers are picked
/// among nodes whose min-cut reaches `n`. Edge ids are `e00`, `e01`, ...
pub fn random_dag(rng: &mut ChaCha8Rng, shape: &DagShape) -> Network {
    loop {
        let inner = rng.random_range(shape.n.max(2)..=shape.n + 4);
        let names: Vec<String> = std::iter::once("S".to_string())
            .chain((1..=inner).map(|i| format!("V{i}")))
            .collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for head in 1..=inner {
            let indeg = rng.random_range(1..=shape.max_in_degree.max(shape.n));
            for _ in 0..indeg {
                // lean on the source so that min-cuts of n are common
                let tail = if rng.random_bool(0.35) {
                    0
                } else {
                    rng.random_range(0..head)
                };
                edges.push((tail, head));
            }
        }
        if edges.len() > shape.max_edges {
            continue;
        }
        let triples: Vec<(String, String, String)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| (format!("e{i:02}"), names[t].clone(), names[h].clone()))
            .collect();
        let probe =
            Network::new(&names, &triples, "S", &[] as &[String]).expect("acyclic by construction");
        let eligible: Vec<&String> = (1..=inner)
            .filter(|&v| probe.min_cut(v) >= shape.n)
            .map(|v| &names[v])
            .collect();
        if eligible.len() < shape.receivers {
            continue;
        }
        let mut chosen: Vec<&String> = eligible
            .choose_multiple(rng, shape.receivers)
            .copied()
            .collect();
        chosen.sort();
        return Network::new(&names, &triples, "S", &chosen).expect("valid network");
    }
}

/// Uniformly random local coefficients.
pub fn random_code(rng: &mut ChaCha8Rng, net: Network, n: usize, field: &FieldSpec) -> NetworkCode {
    let q = field.order();
    let local = (0..net.edge_count())
        .map(|e| {
            (0..NetworkCode::local_arity(&net, n, e))
                .map(|_| rng.random_range(0..q))
                .collect()
        })
        .collect();
    NetworkCode::from_local(net, n, field, local).expect("valid local vectors")
}

/// Random full-row-rank `k x n` matrix.
pub fn random_full_rank(rng: &mut ChaCha8Rng, field: &FieldSpec, k: usize, n: usize) -> FMatrix {
    let q = field.order();
    loop {
        let data = (0..k * n).map(|_| rng.random_range(0..q)).collect();
        let m = FMatrix::new(field, k, n, data).expect("dimensions match");
        if m.rank() == k {
            return m;
        }
    }
}

pub struct Instance {
    pub label: String,
    pub h: FMatrix,
    pub code: NetworkCode,
}

/// Small-instance corpus: `q` in {2, 3, 5, 7}, at most 10 edges, `n <= 4`,
/// `1 <= k <= min(3, n)`, random network codes on random DAGs.
pub fn small_corpus(size: usize, seed: u64) -> Vec<Instance> {
    let mut rng = rng(seed);
    let shapes: [(u64, usize); 12] = [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 2),
        (7, 3),
    ];
    (0..size)
        .map(|i| {
            let (p, n) = shapes[i % shapes.len()];
            let field = FieldSpec::prime(p).expect("prime");
            let shape = DagShape {
                n,
                receivers: rng.random_range(1..=2),
                max_edges: 10,
                max_in_degree: 3,
            };
            let net = random_dag(&mut rng, &shape);
            let code = random_code(&mut rng, net, n, &field);
            let k = rng.random_range(1..=n.min(3));
            let h = random_full_rank(&mut rng, &field, k, n);
            Instance {
                label: format!("#{i} q={p} n={n} k={k} |E|={}", code.network().edge_count()),
                h,
                code,
            }
        })
        .collect()
}
