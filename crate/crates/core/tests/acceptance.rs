//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr
//! (bypassing the test harness capture) before asserting.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::Rng;

use wiretap_nc::coset::{
    gabidulin_parity_check, is_mds_parity_check, rs_parity_check, universal_secrecy_check,
};
use wiretap_nc::equivocation::{
    equivocation_rank, equivocation_restricted_cut, equivocation_underestimated, equivocation_wtc2,
    generalized_hamming_weights, wei_holds,
};
use wiretap_nc::gf::FieldSpec;
use wiretap_nc::netgraph::{butterfly, butterfly_code, parallel, ButterflyVariant};
use wiretap_nc::oracle::{min_equivocation_bruteforce, min_over_subsets, Outcomes};
use wiretap_nc::securecode::{
    alphabet_bound_general, alphabet_bound_minimal, alphabet_bound_two_sources,
    byzantine_secrecy_check, combination_secure_design, field_for_bound, secure_lif,
    verify_secrecy_condition, SecureError,
};
use wiretap_nc::{FMatrix, NetworkCode};

use common::{random_dag, random_full_rank, small_corpus, DagShape};

const LIMIT_BUTTERFLY: Duration = Duration::from_secs(1);
const LIMIT_COMBINATION: Duration = Duration::from_secs(5);
const LIMIT_CORPUS: Duration = Duration::from_secs(600);
const LIMIT_LIF: Duration = Duration::from_secs(600);

const CORPUS_SIZE: usize = 216;
const CORPUS_SEED: u64 = 0x5eed_0003;
const LIF_INSTANCES: usize = 120;
const LIF_SEED: u64 = 0x5eed_0005;

/// Prints the verdict line and fails the test on any failure.
fn conclude(
    id: u32,
    title: &str,
    start: Instant,
    limit: Option<Duration>,
    failures: Vec<String>,
    detail: String,
) {
    let elapsed = start.elapsed();
    let mut failures = failures;
    if let Some(limit) = limit {
        if elapsed > limit {
            failures.push(format!(
                "runtime {:.2}s exceeds {:.0}s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ));
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "acceptance {id} [{verdict}] {title}: {detail} ({:.2}s)",
        elapsed.as_secs_f64()
    );
    assert!(
        failures.is_empty(),
        "criterion {id} failed:\n{}",
        failures.join("\n")
    );
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn all_vectors(q: u32, len: usize) -> Vec<Vec<u32>> {
    (0..q.pow(len as u32))
        .map(|mut idx| {
            (0..len)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    d
                })
                .collect()
        })
        .collect()
}

/// Every receiver recovers every channel word through its flow.
fn all_receivers_decode(code: &NetworkCode) -> bool {
    let Ok(flows) = code.network().edge_disjoint_flows(code.n()) else {
        return false;
    };
    let q = code.field().order();
    all_vectors(q, code.n()).iter().all(|y| {
        let payloads = code.edge_payloads(y).unwrap();
        flows
            .iter()
            .all(|f| code.receiver_decode(f, &payloads).ok().as_ref() == Some(y))
    })
}

#[test]
fn criterion_1_butterfly() {
    let start = Instant::now();
    let f = gf(3);
    let h = FMatrix::from_rows(&f, &[[1, 1]]).unwrap();
    let mut failures = Vec::new();

    let a = butterfly_code(ButterflyVariant::Insecure, &f).unwrap();
    let ra = equivocation_rank(&h, &a, 1, None).unwrap();
    let (oa, wa) = min_equivocation_bruteforce(&h, &a, 1, None).unwrap();
    let wa_ids = a.network().edge_ids(&wa);
    if (ra.delta, oa) != (0, 0) || a.network().edge_ids(&ra.witness) != ["BE"] || wa_ids != ["BE"] {
        failures.push(format!(
            "insecure code: rank {} witness {:?}, oracle {oa} witness {wa_ids:?}",
            ra.delta,
            a.network().edge_ids(&ra.witness)
        ));
    }

    let b = butterfly_code(ButterflyVariant::Secure, &f).unwrap();
    let out = Outcomes::enumerate(&h, &b).unwrap();
    for e in 0..b.network().edge_count() {
        let rank = equivocation_rank(&h, &b, 1, Some(&[e])).unwrap().delta;
        let oracle = min_over_subsets(&out, &b, 1, Some(&[e])).unwrap().0;
        if rank != 1 || oracle != 1 {
            failures.push(format!(
                "secure code, edge {}: rank {rank}, oracle {oracle}",
                b.network().edge(e).id
            ));
        }
    }
    conclude(
        1,
        "butterfly reproduction",
        start,
        Some(LIMIT_BUTTERFLY),
        failures,
        "insecure code leaks on BE (0 symbols left), secure code keeps 1 symbol on every edge"
            .into(),
    );
}

#[test]
fn criterion_2_combination_b34() {
    let start = Instant::now();
    let f = gf(7);
    let mut failures = Vec::new();
    let d = combination_secure_design(3, 4, &f, 2).unwrap();
    let h = d.coset.parity_check();
    if h.to_rows() != vec![vec![1, 1, 1], vec![3, 2, 6]] {
        failures.push(format!("coset matrix {:?}", h.to_rows()));
    }
    let net = d.netcode.network();
    let vectors: Vec<Vec<u32>> = ["S-U1", "S-U2", "S-U3", "S-U4"]
        .iter()
        .map(|id| d.netcode.global(net.edge_by_id(id).unwrap()).to_vec())
        .collect();
    if vectors != vec![vec![2, 4, 1], vec![6, 1, 6], vec![4, 2, 1], vec![5, 4, 6]] {
        failures.push(format!("edge vectors {vectors:?}"));
    }
    if !verify_secrecy_condition(h, &d.netcode, 1, None)
        .unwrap()
        .secure
    {
        failures.push("secrecy condition fails at mu = 1".into());
    }
    if net.receivers().len() != 4 || !all_receivers_decode(&d.netcode) {
        failures.push("some receiver cannot decode".into());
    }
    let (oracle, _) = min_equivocation_bruteforce(h, &d.netcode, 1, None).unwrap();
    if oracle != 2 {
        failures.push(format!("oracle equivocation at mu = 1 is {oracle}"));
    }
    conclude(
        2,
        "B(3,4) reproduction",
        start,
        Some(LIMIT_COMBINATION),
        failures,
        "bit-exact coset and edge vectors, secure at mu = 1, 4 receivers decode, oracle equivocation 2".into(),
    );
}

#[test]
fn criterion_3_rank_formula_matches_oracle() {
    let start = Instant::now();
    let corpus = small_corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut failures = Vec::new();
    let mut comparisons = 0usize;
    let mut flagged = 0usize;
    for inst in &corpus {
        let out = Outcomes::enumerate(&inst.h, &inst.code).unwrap();
        for mu in 0..=inst.code.network().edge_count() {
            let rank = equivocation_rank(&inst.h, &inst.code, mu, None).unwrap();
            let (oracle, _) = min_over_subsets(&out, &inst.code, mu, None).unwrap();
            // the rank witness must attain the oracle minimum on its own
            let (at_witness, _) =
                min_over_subsets(&out, &inst.code, mu, Some(&rank.witness)).unwrap();
            comparisons += 1;
            flagged += rank.rank_deficient as usize;
            if rank.delta != oracle || at_witness != oracle {
                failures.push(format!(
                    "{} mu={mu}: rank {} oracle {oracle} oracle-at-witness {at_witness}",
                    inst.label, rank.delta
                ));
            }
        }
    }
    conclude(
        3,
        "rank formula equals oracle",
        start,
        Some(LIMIT_CORPUS),
        failures,
        format!(
            "{} instances, {comparisons} (instance, mu) pairs, {flagged} with rank-deficient budgets",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_4_special_cases() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = common::rng(0x5eed_0004);

    // (a) parallel edges carrying the unit vectors: type II wiretap channel
    let mut parallel_cases = 0;
    for i in 0..60 {
        let p = [2u64, 3, 5, 7][i % 4];
        let f = gf(p);
        let n = rng.random_range(1..=4usize);
        let k = rng.random_range(1..=n);
        let h = random_full_rank(&mut rng, &f, k, n);
        let local = (0..n)
            .map(|a| (0..n).map(|b| (a == b) as u32).collect())
            .collect();
        let code = NetworkCode::from_local(parallel(n).unwrap(), n, &f, local).unwrap();
        for mu in 0..=n {
            let rank = equivocation_rank(&h, &code, mu, None).unwrap().delta;
            let wtc2 = equivocation_wtc2(&h, mu);
            if rank != wtc2 {
                failures.push(format!(
                    "(a) q={p} H={:?} mu={mu}: rank {rank}, type II {wtc2}",
                    h.to_rows()
                ));
            }
        }
        parallel_cases += 1;
    }

    // (b) Reed-Solomon designs secure at lambda = n - k
    let mut rs_cases = 0;
    for (p, n, m, k) in [
        (5u64, 2, 3, 1),
        (7, 3, 4, 2),
        (7, 3, 3, 1),
        (7, 2, 4, 2),
        (11, 3, 5, 2),
        (11, 2, 6, 1),
    ] {
        let d = combination_secure_design(n, m, &gf(p), k).unwrap();
        let lambda = n - k;
        for mu in lambda..=n {
            let rank = equivocation_rank(d.coset.parity_check(), &d.netcode, mu, None)
                .unwrap()
                .delta;
            let formula = equivocation_underestimated(k, lambda, mu).unwrap();
            if rank != formula {
                failures.push(format!(
                    "(b) B({n},{m}) q={p} k={k} mu={mu}: rank {rank}, formula {formula}"
                ));
            }
        }
        rs_cases += 1;
    }
    for (p, n, k) in [(7u64, 4, 2), (7, 5, 3), (5, 4, 1), (11, 5, 2)] {
        let f = gf(p);
        let h = rs_parity_check(n, n, &f, f.primitive()).unwrap();
        let h = h.select_rows(&(0..k).collect::<Vec<_>>()).unwrap();
        assert!(is_mds_parity_check(&h).unwrap().is_mds);
        let local = (0..n)
            .map(|a| (0..n).map(|b| (a == b) as u32).collect())
            .collect();
        let code = NetworkCode::from_local(parallel(n).unwrap(), n, &f, local).unwrap();
        let lambda = n - k;
        for mu in lambda..=n {
            let rank = equivocation_rank(&h, &code, mu, None).unwrap().delta;
            let formula = equivocation_underestimated(k, lambda, mu).unwrap();
            if rank != formula {
                failures.push(format!(
                    "(b) parallel n={n} q={p} k={k} mu={mu}: rank {rank}, formula {formula}"
                ));
            }
        }
        rs_cases += 1;
    }

    // (c) and (d): wiretapper confined to a receiver's incoming cut
    let mut cuts = 0;
    let mut wei_checks = 0;
    let mut mds_cuts = 0;
    let mut designs: Vec<(FMatrix, NetworkCode, bool)> = Vec::new();
    for (p, n, m, k) in [(7u64, 3, 4, 2), (7, 3, 4, 1), (11, 3, 5, 2), (5, 2, 3, 1)] {
        let d = combination_secure_design(n, m, &gf(p), k).unwrap();
        designs.push((d.coset.parity_check().clone(), d.netcode, true));
    }
    for inst in small_corpus(60, 0x5eed_0044) {
        designs.push((inst.h, inst.code, false));
    }
    for (h, code, mds) in &designs {
        let net = code.network();
        for &r in net.receivers() {
            let cut = net.in_edges(r).to_vec();
            let c = code.coding_matrix(&cut);
            if c.rows() != code.n() || c.rank() < code.n() {
                continue;
            }
            cuts += 1;
            mds_cuts += *mds as usize;
            let effective = h.mul_mat(&c.invert().unwrap()).unwrap();
            let weights = generalized_hamming_weights(&effective.null_space_basis()).unwrap();
            for mu in 0..=code.n() {
                let cut_value = equivocation_restricted_cut(h, code, &cut, mu).unwrap();
                let rank = equivocation_rank(h, code, mu, Some(&cut)).unwrap().delta;
                if cut_value != rank {
                    failures.push(format!("(c) mu={mu}: cut formula {cut_value}, rank {rank}"));
                }
                if *mds && cut_value != equivocation_wtc2(h, mu) {
                    failures.push(format!(
                        "(c) MDS design mu={mu}: cut formula {cut_value} differs from H alone"
                    ));
                }
                wei_checks += 1;
                if !wei_holds(&weights, code.n(), mu, rank) {
                    failures.push(format!("(d) weights {weights:?} mu={mu} delta={rank}"));
                }
            }
        }
    }
    conclude(
        4,
        "special-case equivocation",
        start,
        None,
        failures,
        format!(
            "(a) {parallel_cases} parallel-edge cases, (b) {rs_cases} Reed-Solomon designs, \
             (c) {cuts} receiver cuts ({mds_cuts} MDS), (d) {wei_checks} Wei checks"
        ),
    );
}

#[test]
fn criterion_5_secure_lif_at_the_bound() {
    let start = Instant::now();
    let mut rng = common::rng(LIF_SEED);
    let mut failures = Vec::new();
    let mut built = 0;
    for i in 0..LIF_INSTANCES {
        let mu = 1 + i % 2;
        let n = rng.random_range(mu + 1..=3);
        let t = rng.random_range(1..=3);
        let net = random_dag(
            &mut rng,
            &DagShape {
                n,
                receivers: t,
                max_edges: 12,
                max_in_degree: 3,
            },
        );
        let bound = alphabet_bound_general(net.edge_count(), mu, t);
        let bound: u64 = bound.try_into().unwrap();
        let f = field_for_bound(bound).unwrap();
        let h = random_full_rank(&mut rng, &f, n - mu, n);
        let label = format!(
            "#{i} |E|={} t={t} n={n} mu={mu} q={}",
            net.edge_count(),
            f.order()
        );
        let d = match secure_lif(&net, n, mu, &h) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        built += 1;
        if !verify_secrecy_condition(&h, &d.netcode, mu, None)
            .unwrap()
            .secure
        {
            failures.push(format!("{label}: fails the secrecy condition"));
        }
        if !all_receivers_decode(&d.netcode) {
            failures.push(format!("{label}: a receiver cannot decode"));
        }
        let (oracle, w) = min_equivocation_bruteforce(&h, &d.netcode, mu, None).unwrap();
        if oracle != n - mu {
            failures.push(format!("{label}: oracle leaks at {:?}", net.edge_ids(&w)));
        }
    }
    let negative = secure_lif(
        &butterfly(),
        2,
        1,
        &FMatrix::from_rows(&gf(2), &[[1, 1]]).unwrap(),
    );
    if !matches!(negative, Err(SecureError::FieldTooSmall { .. })) {
        failures.push(format!("negative control returned {negative:?}"));
    }
    conclude(
        5,
        "secure LIF at the alphabet bound",
        start,
        Some(LIMIT_LIF),
        failures,
        format!("{built}/{LIF_INSTANCES} instances built, verified, decoded and oracle-checked; GF(2) butterfly refused"),
    );
}

#[test]
fn criterion_6_mrd_universality() {
    let start = Instant::now();
    let f2 = gf(2);
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in [2u32, 3] {
        for n in 1..=m as usize {
            for k in 1..=n {
                // B has k rows, the parity check n - k
                let h = gabidulin_parity_check(n, k, &f2, m).unwrap();
                for data in all_vectors(2, k * n) {
                    let b = FMatrix::new(&f2, k, n, data).unwrap();
                    if b.rank() < k {
                        continue;
                    }
                    checked += 1;
                    if !universal_secrecy_check(&h, &b).unwrap() {
                        failures.push(format!("m={m} n={n} k={k} B={:?}", b.to_rows()));
                    }
                }
            }
        }
    }
    let h = FMatrix::from_rows(&f2, &[[1, 1]]).unwrap();
    if universal_secrecy_check(&h, &h).unwrap() {
        failures.push("prime-field counterexample H = B = [1 1] passed".into());
    }
    conclude(
        6,
        "MRD universality",
        start,
        None,
        failures,
        format!("{checked} full-rank binary B checked over GF(4) and GF(8); [1 1] counterexample rejected"),
    );
}

#[test]
fn criterion_7_byzantine_reduction() {
    let start = Instant::now();
    let corpus = small_corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut failures = Vec::new();
    let mut comparisons = 0;
    let mut insecure = 0;
    for inst in &corpus {
        let g = FMatrix::identity(inst.code.field(), inst.code.n());
        for mu in 0..=inst.code.n() - inst.h.rows() {
            let plain = verify_secrecy_condition(&inst.h, &inst.code, mu, None).unwrap();
            let byz = byzantine_secrecy_check(&inst.h, &g, &inst.code, mu).unwrap();
            comparisons += 1;
            insecure += !plain.secure as usize;
            if plain != byz {
                failures.push(format!("{} mu={mu}: {plain:?} vs {byz:?}", inst.label));
            }
        }
    }
    conclude(
        7,
        "Byzantine check with identity generator",
        start,
        None,
        failures,
        format!("{comparisons} comparisons agree ({insecure} insecure)"),
    );
}

#[test]
fn criterion_8_bounds() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases: [(&str, BigUint, u64); 4] = [
        ("general(9,1,2)", alphabet_bound_general(9, 1, 2), 3),
        (
            "two_sources(2)",
            BigUint::from(alphabet_bound_two_sources(2)),
            3,
        ),
        (
            "two_sources(7)",
            BigUint::from(alphabet_bound_two_sources(7)),
            5,
        ),
        ("minimal(1,1,1)", alphabet_bound_minimal(1, 1, 1), 2),
    ];
    for (name, got, want) in &cases {
        if *got != BigUint::from(*want) {
            failures.push(format!("{name} = {got}, expected {want}"));
        }
    }
    let summary = cases
        .iter()
        .map(|(name, got, _)| format!("{name}={got}"))
        .join(", ");
    conclude(8, "bound arithmetic", start, None, failures, summary);
}
