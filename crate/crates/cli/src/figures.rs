//! Built-in worked examples, regenerated end to end and diffed against golden files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use wiretap_nc::equivocation::{sweep, EquivocationReport};
use wiretap_nc::netgraph::{butterfly_code, ButterflyVariant};
use wiretap_nc::oracle::{conditional_entropy_q, min_over_subsets, snap, Outcomes};
use wiretap_nc::securecode::{combination_secure_design, SecurityParams};
use wiretap_nc::{CosetCode, FMatrix, FieldSpec, SecureDesign};

use crate::commands::Outcome;
use crate::io::{to_json, write, Run};

#[derive(Serialize)]
struct OracleMinimum {
    delta: usize,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct FigureReport {
    name: String,
    design: SecureDesign,
    equivocation: EquivocationReport,
    oracle: BTreeMap<usize, OracleMinimum>,
    /// `H(S | Z_e)` for every single edge, from the oracle.
    single_edge: BTreeMap<String, usize>,
    checks: BTreeMap<String, bool>,
}

fn butterfly_design(variant: ButterflyVariant, name: &str) -> Result<SecureDesign> {
    let f = FieldSpec::prime(3)?;
    let code = butterfly_code(variant, &f)?;
    let h = CosetCode::new(FMatrix::from_rows(&f, &[[1, 1]])?)?;
    let params = SecurityParams {
        mu: 1,
        k: 1,
        n: 2,
        restricted: None,
    };
    Ok(SecureDesign::certify(h, code, params, name, 0)?)
}

fn report(name: &str, design: SecureDesign) -> Result<FigureReport> {
    let h = design.coset.parity_check();
    let code = &design.netcode;
    let net = code.network();
    let mu_max = code.n().min(net.edge_count());
    let equivocation = sweep(h, code, mu_max, None)?;
    let outcomes = Outcomes::enumerate(h, code)?;
    let mut oracle = BTreeMap::new();
    for mu in 0..=mu_max {
        let (delta, w) = min_over_subsets(&outcomes, code, mu, None)?;
        oracle.insert(
            mu,
            OracleMinimum {
                delta,
                witness: net.edge_ids(&w),
            },
        );
    }
    let mut single_edge = BTreeMap::new();
    for &e in net.edges_sorted_by_id() {
        let value = snap(conditional_entropy_q(&outcomes.joint(&[e])))?;
        single_edge.insert(net.edge(e).id.clone(), value);
    }
    let mut checks = BTreeMap::new();
    checks.insert(
        "oracle_agrees".to_string(),
        oracle
            .iter()
            .all(|(mu, o)| equivocation.delta[mu] == o.delta),
    );
    checks.insert("decodable".to_string(), design.certificate.decodable);
    Ok(FigureReport {
        name: name.to_string(),
        design,
        equivocation,
        oracle,
        single_edge,
        checks,
    })
}

fn figures() -> Result<Vec<FigureReport>> {
    let mut out = Vec::new();

    let mut a = report(
        "butterfly-insecure",
        butterfly_design(ButterflyVariant::Insecure, "butterfly-insecure")?,
    )?;
    let leaks = !a.design.certificate.secure
        && a.design.certificate.witness.as_deref() == Some(&["BE".to_string()][..])
        && a.equivocation.delta[&1] == 0
        && a.single_edge["BE"] == 0;
    a.checks.insert("bottleneck_leaks".into(), leaks);
    out.push(a);

    let mut b = report(
        "butterfly-secure",
        butterfly_design(ButterflyVariant::Secure, "butterfly-secure")?,
    )?;
    let secure = b.design.certificate.secure && b.single_edge.values().all(|&v| v == 1);
    b.checks.insert("every_edge_hides_secret".into(), secure);
    out.push(b);

    let f7 = FieldSpec::prime(7)?;
    let mut c = report("combination-3-4", combination_secure_design(3, 4, &f7, 2)?)?;
    let secure = c.design.certificate.secure && c.equivocation.delta[&1] == 2;
    c.checks.insert("secure_at_budget_1".into(), secure);
    out.push(c);

    Ok(out)
}

/// Regenerates the examples; `ok` only if every check holds and every golden file matches.
pub fn paper_figures(
    run: &mut Run,
    golden: &Path,
    out: Option<&Path>,
    bless: bool,
) -> Result<Outcome> {
    let reports = run.time("figures", figures)?;
    let mut status = BTreeMap::new();
    let mut ok = true;
    for r in &reports {
        let text = to_json(r)?;
        let file = format!("{}.json", r.name);
        if let Some(dir) = out {
            write(&dir.join(&file), &text)?;
            write(
                &dir.join(format!("{}.design.json", r.name)),
                &to_json(&r.design)?,
            )?;
        }
        let golden_path = golden.join(&file);
        let golden_state = if bless {
            write(&golden_path, &text)?;
            "blessed".to_string()
        } else {
            match fs::read_to_string(&golden_path) {
                Ok(expected) if expected == text => "match".to_string(),
                Ok(expected) => {
                    let line = expected
                        .lines()
                        .zip(text.lines())
                        .position(|(a, b)| a != b)
                        .unwrap_or_else(|| expected.lines().count().min(text.lines().count()));
                    eprintln!(
                        "GoldenMismatch: {} differs at line {}",
                        golden_path.display(),
                        line + 1
                    );
                    "mismatch".to_string()
                }
                Err(e) => {
                    eprintln!("GoldenMismatch: cannot read {}: {e}", golden_path.display());
                    "missing".to_string()
                }
            }
        };
        let checks_pass = r.checks.values().all(|&c| c);
        ok &= checks_pass && (golden_state == "match" || golden_state == "blessed");
        status.insert(
            r.name.clone(),
            json!({"checks": checks_pass, "golden": golden_state}),
        );
    }
    let summary = serde_json::to_value(&status)?;
    Ok(Outcome {
        ok,
        result: to_json(&status)?,
        stdout: None,
        summary,
    })
}

/// Golden directory shipped with the sources.
pub fn default_golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))
}

pub fn read_golden_hashes(run: &mut Run, golden: &Path) -> Result<()> {
    if !golden.is_dir() {
        return Ok(());
    }
    let mut names: Vec<_> = fs::read_dir(golden)
        .with_context(|| format!("listing {}", golden.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    for p in names {
        run.read(&p)?;
    }
    Ok(())
}
