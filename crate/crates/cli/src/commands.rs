//! Thin wrappers over the library operations.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use wiretap_nc::equivocation::{equivocation_rank, sweep};
use wiretap_nc::netgraph::NetworkFile;
use wiretap_nc::oracle::min_equivocation_bruteforce;
use wiretap_nc::securecode::{
    alphabet_bound_general, field_for_bound, secure_lif, verify_secrecy_condition,
};
use wiretap_nc::{CosetCode, SecureDesign};

use crate::io::{read_vector, to_json, Run};

pub struct Outcome {
    pub ok: bool,
    /// Result file contents; a pure function of the inputs and the seed.
    pub result: String,
    /// What goes to standard output; the result itself unless a command says otherwise.
    pub stdout: Option<String>,
    pub summary: serde_json::Value,
}

impl Outcome {
    fn new<T: Serialize>(ok: bool, result: &T, summary: serde_json::Value) -> Result<Outcome> {
        Ok(Outcome {
            ok,
            result: to_json(result)?,
            stdout: None,
            summary,
        })
    }
}

fn restricted_edges(design: &SecureDesign, ids: Option<&[String]>) -> Result<Option<Vec<usize>>> {
    ids.map(|ids| design.netcode.network().edges_by_ids(ids))
        .transpose()
        .context("resolving --restricted")
}

pub fn build(run: &mut Run, network: &Path, h: &Path, mu: usize) -> Result<Outcome> {
    let file: NetworkFile = run.read_json(network)?;
    let (net, n, field) = file.load()?;
    let h = run.read_parity_check(h)?;
    anyhow::ensure!(
        h.field() == &field,
        "H is over GF({}) but the network declares GF({})",
        h.field().order(),
        field.order()
    );
    let design = run.time("secure_lif", || secure_lif(&net, n, mu, &h))?;
    let again = run.time("reverify", || design.reverify())?;
    assert!(
        again.is_valid() && again == design,
        "secure LIF output failed re-verification"
    );
    let summary = json!({
        "secure": design.certificate.secure,
        "decodable": design.certificate.decodable,
        "q": field.order(),
        "construction_checks": design.certificate.construction_checks,
    });
    Outcome::new(true, &design, summary)
}

#[derive(Serialize)]
struct VerifyResult {
    mu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    restricted: Option<Vec<String>>,
    secure: bool,
    decodable: bool,
    subsets_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    undecodable: Vec<String>,
    /// Whether the stored certificate agrees with the recomputation; absent
    /// when the budget or edge pool was overridden.
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_agrees: Option<bool>,
}

pub fn verify(
    run: &mut Run,
    design: &Path,
    mu: Option<usize>,
    restricted: Option<&[String]>,
) -> Result<Outcome> {
    let design: SecureDesign = run.read_json(design)?;
    let overridden = mu.is_some() || restricted.is_some();
    let mu = mu.unwrap_or(design.params.mu);
    let ids = restricted
        .map(<[String]>::to_vec)
        .or_else(|| design.params.restricted.clone());
    let pool = restricted_edges(&design, ids.as_deref())?;
    let check = run.time("verify", || {
        verify_secrecy_condition(
            design.coset.parity_check(),
            &design.netcode,
            mu,
            pool.as_deref(),
        )
    })?;
    let witness = check.witness.map(|w| design.netcode.network().edge_ids(&w));
    let undecodable = design.netcode.undecodable_receivers();
    let result = VerifyResult {
        mu,
        restricted: ids,
        secure: check.secure,
        decodable: undecodable.is_empty(),
        subsets_checked: check.subsets_checked,
        certificate_agrees: (!overridden).then(|| {
            design.certificate.secure == check.secure && design.certificate.witness == witness
        }),
        witness,
        undecodable,
    };
    let ok = result.secure && result.decodable;
    let summary =
        json!({"secure": result.secure, "decodable": result.decodable, "witness": result.witness});
    Outcome::new(ok, &result, summary)
}

pub fn sweep_cmd(
    run: &mut Run,
    design: &Path,
    mu_max: usize,
    restricted: Option<&[String]>,
) -> Result<Outcome> {
    let design: SecureDesign = run.read_json(design)?;
    let pool = restricted_edges(&design, restricted)?;
    let report = run.time("sweep", || {
        sweep(
            design.coset.parity_check(),
            &design.netcode,
            mu_max,
            pool.as_deref(),
        )
    })?;
    let summary = json!({"delta": report.delta});
    Outcome::new(true, &report, summary)
}

#[derive(Serialize)]
struct Minimum {
    delta: usize,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct OracleResult {
    mu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    restricted: Option<Vec<String>>,
    rank: Minimum,
    oracle: Minimum,
    agree: bool,
}

pub fn oracle(
    run: &mut Run,
    design: &Path,
    mu: usize,
    restricted: Option<&[String]>,
) -> Result<Outcome> {
    let design: SecureDesign = run.read_json(design)?;
    let pool = restricted_edges(&design, restricted)?;
    let h = design.coset.parity_check();
    let code = &design.netcode;
    let rank = run.time("rank", || equivocation_rank(h, code, mu, pool.as_deref()))?;
    let (delta, witness) = run.time("oracle", || {
        min_equivocation_bruteforce(h, code, mu, pool.as_deref())
    })?;
    let result = OracleResult {
        mu,
        restricted: restricted.map(<[String]>::to_vec),
        rank: Minimum {
            delta: rank.delta,
            witness: code.network().edge_ids(&rank.witness),
        },
        oracle: Minimum {
            delta,
            witness: code.network().edge_ids(&witness),
        },
        agree: rank.delta == delta,
    };
    let summary = json!({"agree": result.agree, "rank": rank.delta, "oracle": delta});
    Outcome::new(result.agree, &result, summary)
}

pub fn bounds(run: &mut Run, network: &Path, mu: usize) -> Result<Outcome> {
    let file: NetworkFile = run.read_json(network)?;
    let (net, _, _) = file.load()?;
    let edges = net.edge_count();
    let t = net.receivers().len();
    let bound = alphabet_bound_general(edges, mu, t);
    let small = u64::try_from(&bound).ok();
    let field = small.map(field_for_bound).transpose()?.map(|f| f.desc());
    let bound_json = match small {
        Some(b) => json!(b),
        None => json!(bound.to_string()),
    };
    let result = json!({
        "edges": edges,
        "receivers": t,
        "mu": mu,
        "bound": bound_json,
        "field": field,
    });
    let mut out = Outcome::new(true, &result, json!({"bound": bound_json}))?;
    out.stdout = Some(format!("{bound}\n"));
    Ok(out)
}

fn load_coset(run: &mut Run, h: &Path) -> Result<CosetCode> {
    Ok(CosetCode::new(run.read_parity_check(h)?)?)
}

pub fn coset_encode(run: &mut Run, h: &Path, secret: &str) -> Result<Outcome> {
    let code = load_coset(run, h)?;
    let secret = read_vector(run, secret)?;
    let word = code.encode(&secret, run.seed())?;
    Outcome::new(true, &word, json!({"n": word.len()}))
}

pub fn coset_decode(run: &mut Run, h: &Path, word: &str) -> Result<Outcome> {
    let code = load_coset(run, h)?;
    let word = read_vector(run, word)?;
    let secret = code.decode(&word)?;
    Outcome::new(true, &secret, json!({"k": secret.len()}))
}
