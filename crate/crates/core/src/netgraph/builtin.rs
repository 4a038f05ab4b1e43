use itertools::Itertools;

use super::{NetError, Network, NetworkCode};
use crate::gf::FieldSpec;

const BUTTERFLY_EDGES: [(&str, &str, &str); 9] = [
    ("SA", "S", "A"),
    ("SC", "S", "C"),
    ("AB", "A", "B"),
    ("CB", "C", "B"),
    ("AD", "A", "D"),
    ("CF", "C", "F"),
    ("BE", "B", "E"),
    ("ED", "E", "D"),
    ("EF", "E", "F"),
];

/// The butterfly network: source `S`, receivers `D` and `F`, bottleneck `BE`.
pub fn butterfly() -> Network {
    Network::new(
        &["S", "A", "B", "C", "D", "E", "F"],
        &BUTTERFLY_EDGES,
        "S",
        &["D", "F"],
    )
    .expect("static topology is valid")
}

/// Which combination node `B` applies to its inputs `x1` (from `A`) and `x2` (from `C`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ButterflyVariant {
    /// `BE` carries `x1 + x2`.
    Insecure,
    /// `BE` carries `x1 + a x2` for the primitive element `a`.
    Secure,
}

/// Routing everywhere except at `B`; source edges carry `x1` and `x2`.
pub fn butterfly_code(
    variant: ButterflyVariant,
    field: &FieldSpec,
) -> Result<NetworkCode, NetError> {
    let net = butterfly();
    let be = match variant {
        ButterflyVariant::Insecure => vec![1, 1],
        ButterflyVariant::Secure => vec![1, field.primitive()],
    };
    let local = net
        .edges()
        .iter()
        .map(|e| match e.id.as_str() {
            "SA" => vec![1, 0],
            "SC" => vec![0, 1],
            "BE" => be.clone(),
            _ => vec![1],
        })
        .collect();
    NetworkCode::from_local(net, 2, field, local)
}

fn padded(prefix: &str, i: usize, total: usize) -> String {
    let width = total.to_string().len();
    format!("{prefix}{i:0width$}")
}

/// Combination network `B(n, M)`: source `S`, middle nodes `U1..UM`, and one
/// receiver per `n`-subset of the middle layer in lexicographic order.
///
/// Edge ids are `S-Ui` and `Ui-Rj`; indices are zero-padded so that id order
/// matches numeric order.
pub fn combination(n: usize, m: usize) -> Result<Network, NetError> {
    if n == 0 || m < n {
        return Err(NetError::BadParameters(format!(
            "B({n},{m}) needs 1 <= n <= M"
        )));
    }
    let subsets: Vec<Vec<usize>> = (1..=m).combinations(n).collect();
    let middle: Vec<String> = (1..=m).map(|i| padded("U", i, m)).collect();
    let receivers: Vec<String> = (1..=subsets.len())
        .map(|j| padded("R", j, subsets.len()))
        .collect();
    let mut nodes = vec!["S".to_string()];
    nodes.extend(middle.iter().cloned());
    nodes.extend(receivers.iter().cloned());
    let mut edges = Vec::new();
    for u in &middle {
        edges.push((format!("S-{u}"), "S".to_string(), u.clone()));
    }
    for (r, subset) in receivers.iter().zip(&subsets) {
        for &i in subset {
            let u = &middle[i - 1];
            edges.push((format!("{u}-{r}"), u.clone(), r.clone()));
        }
    }
    Network::new(&nodes, &edges, "S", &receivers)
}

/// Source and sink joined by `n` parallel edges `e1..en`.
pub fn parallel(n: usize) -> Result<Network, NetError> {
    if n == 0 {
        return Err(NetError::BadParameters(
            "parallel network needs n >= 1".into(),
        ));
    }
    let edges: Vec<(String, String, String)> = (1..=n)
        .map(|i| (padded("e", i, n), "S".to_string(), "T".to_string()))
        .collect();
    Network::new(
        &["S".to_string(), "T".to_string()],
        &edges,
        "S",
        &["T".to_string()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::binomial;

    #[test]
    fn butterfly_shape() {
        let b = butterfly();
        assert_eq!(b.edge_count(), 9);
        assert_eq!(b.receivers().len(), 2);
        assert_eq!(b.in_edges(b.node("B").unwrap()), &[2, 3]);
    }

    #[test]
    fn combination_shape() {
        let net = combination(3, 4).unwrap();
        assert_eq!(net.receivers().len(), 4);
        assert_eq!(net.edge_count(), 4 + 4 * 3);
        let r1 = net.receivers()[0];
        let feeding: Vec<String> = net.edge_ids(net.in_edges(r1));
        assert_eq!(feeding, vec!["U1-R1", "U2-R1", "U3-R1"]);
        let r4 = net.receivers()[3];
        assert_eq!(
            net.edge_ids(net.in_edges(r4)),
            vec!["U2-R4", "U3-R4", "U4-R4"]
        );
        assert_eq!(combination(3, 3).unwrap().receivers().len(), 1);
        assert!(matches!(combination(3, 2), Err(NetError::BadParameters(_))));
        assert!(matches!(combination(0, 2), Err(NetError::BadParameters(_))));
    }

    #[test]
    fn combination_counts_and_cuts() {
        for m in 1..=6 {
            for n in 1..=m {
                let net = combination(n, m).unwrap();
                assert_eq!(net.receivers().len() as u64, binomial(m, n));
                for &r in net.receivers() {
                    assert_eq!(net.min_cut(r), n);
                }
            }
        }
        let net = combination(2, 12).unwrap();
        assert_eq!(net.node_name(1), "U01");
        assert_eq!(net.edge(0).id, "S-U01");
    }

    #[test]
    fn parallel_shape() {
        let p = parallel(3).unwrap();
        assert_eq!(p.edge_ids(&[0, 1, 2]), vec!["e1", "e2", "e3"]);
        assert_eq!(p.min_cut_to("T").unwrap(), 3);
    }
}
