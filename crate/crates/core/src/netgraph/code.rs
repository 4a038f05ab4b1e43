use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Flow, NetError, Network, NetworkFile};
use crate::fmatrix::FMatrix;
use crate::gf::FieldSpec;

/// A linear network code: local coefficients per edge and the global coding
/// vectors they induce.
///
/// Source out-edges combine the `n` source symbols directly; every other edge
/// combines the in-edges of its tail, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkCode {
    network: Network,
    n: usize,
    field: FieldSpec,
    local: Vec<Vec<u32>>,
    global: Vec<Vec<u32>>,
}

impl NetworkCode {
    /// Number of local coefficients edge `e` takes.
    pub fn local_arity(network: &Network, n: usize, e: usize) -> usize {
        let tail = network.edge(e).tail;
        if tail == network.source() {
            n
        } else {
            network.in_edges(tail).len()
        }
    }

    pub fn from_local(
        network: Network,
        n: usize,
        field: &FieldSpec,
        local: Vec<Vec<u32>>,
    ) -> Result<NetworkCode, NetError> {
        if local.len() != network.edge_count() {
            return Err(NetError::BadParameters(format!(
                "{} local vectors for {} edges",
                local.len(),
                network.edge_count()
            )));
        }
        for (e, l) in local.iter().enumerate() {
            let expected = Self::local_arity(&network, n, e);
            if l.len() != expected {
                return Err(NetError::LocalLength {
                    edge: network.edge(e).id.clone(),
                    expected,
                    got: l.len(),
                });
            }
            if let Some(&bad) = l.iter().find(|&&c| !field.contains(c as u64)) {
                return Err(
                    crate::fmatrix::MatrixError::from(crate::gf::GfError::OutOfRange {
                        value: bad as u64,
                        q: field.order(),
                    })
                    .into(),
                );
            }
        }
        let mut code = NetworkCode {
            global: vec![vec![0; n]; network.edge_count()],
            network,
            n,
            field: field.clone(),
            local,
        };
        code.propagate();
        Ok(code)
    }

    /// Builds from named local vectors; edges not listed are rejected.
    pub fn from_named_local(
        network: Network,
        n: usize,
        field: &FieldSpec,
        local: &BTreeMap<String, Vec<u32>>,
    ) -> Result<NetworkCode, NetError> {
        let mut vectors = Vec::with_capacity(network.edge_count());
        for e in network.edges() {
            let l = local.get(&e.id).ok_or_else(|| {
                NetError::BadParameters(format!("no local coefficients for `{}`", e.id))
            })?;
            vectors.push(l.clone());
        }
        for id in local.keys() {
            network.edge_by_id(id)?;
        }
        NetworkCode::from_local(network, n, field, vectors)
    }

    /// Recomputes every global vector from the local coefficients.
    pub fn propagate(&mut self) {
        let f = &self.field;
        for &e in self.network.topological_order() {
            self.global[e] =
                global_from_local(&self.network, f, self.n, e, &self.local[e], &self.global);
        }
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn local(&self, e: usize) -> &[u32] {
        &self.local[e]
    }

    pub fn global(&self, e: usize) -> &[u32] {
        &self.global[e]
    }

    /// `C_W`: the global vectors of `edges`, one per row.
    pub fn coding_matrix(&self, edges: &[usize]) -> FMatrix {
        let rows: Vec<&[u32]> = edges.iter().map(|&e| self.global[e].as_slice()).collect();
        if rows.is_empty() {
            return FMatrix::zeros(&self.field, 0, self.n);
        }
        FMatrix::from_rows(&self.field, &rows).expect("global vectors share length n")
    }

    /// Symbols carried by every edge for channel input `y`, evaluated hop by
    /// hop from the local coefficients.
    pub fn edge_payloads(&self, y: &[u32]) -> Result<Vec<u32>, NetError> {
        if y.len() != self.n {
            return Err(NetError::BadParameters(format!(
                "channel vector has length {}, expected {}",
                y.len(),
                self.n
            )));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.network.edge_count()];
        for &e in self.network.topological_order() {
            let tail = self.network.edge(e).tail;
            let inputs: Vec<u32> = if tail == self.network.source() {
                y.to_vec()
            } else {
                self.network
                    .in_edges(tail)
                    .iter()
                    .map(|&i| out[i])
                    .collect()
            };
            out[e] = inputs
                .iter()
                .zip(&self.local[e])
                .fold(0, |acc, (&x, &c)| f.add(acc, f.mul(x, c)));
        }
        Ok(out)
    }

    /// `B_F`: global vectors of the final edges of the flow's paths.
    pub fn flow_matrix(&self, flow: &Flow) -> FMatrix {
        self.coding_matrix(&flow.last_edges())
    }

    /// Recovers `Y` from the payloads arriving over `flow`.
    pub fn receiver_decode(&self, flow: &Flow, payloads: &[u32]) -> Result<Vec<u32>, NetError> {
        let b = self.flow_matrix(flow);
        let inv = b.invert().map_err(|_| NetError::SingularDecodingMatrix {
            receiver: self.network.node_name(flow.receiver).to_string(),
            rank: b.rank(),
        })?;
        let z: Vec<u32> = flow.last_edges().iter().map(|&e| payloads[e]).collect();
        Ok(inv.mul_vec(&z)?)
    }

    /// Receivers whose incoming global vectors do not span `F_q^n`.
    pub fn undecodable_receivers(&self) -> Vec<String> {
        self.network
            .receivers()
            .iter()
            .filter(|&&r| self.coding_matrix(self.network.in_edges(r)).rank() < self.n)
            .map(|&r| self.network.node_name(r).to_string())
            .collect()
    }

    pub fn is_feasible(&self) -> bool {
        self.undecodable_receivers().is_empty()
    }

    pub fn to_file(&self) -> NetworkCodeFile {
        let name = |e: usize| self.network.edge(e).id.clone();
        NetworkCodeFile {
            network: NetworkFile::from_network(&self.network, self.n, &self.field),
            local: (0..self.local.len())
                .map(|e| (name(e), self.local[e].clone()))
                .collect(),
            global: (0..self.global.len())
                .map(|e| (name(e), self.global[e].clone()))
                .collect(),
        }
    }
}

pub(crate) fn global_from_local(
    net: &Network,
    f: &FieldSpec,
    n: usize,
    e: usize,
    local: &[u32],
    global: &[Vec<u32>],
) -> Vec<u32> {
    let tail = net.edge(e).tail;
    if tail == net.source() {
        return local.to_vec();
    }
    let mut v = vec![0u32; n];
    for (&c, &i) in local.iter().zip(net.in_edges(tail)) {
        if c == 0 {
            continue;
        }
        for (acc, &g) in v.iter_mut().zip(&global[i]) {
            *acc = f.add(*acc, f.mul(c, g));
        }
    }
    v
}

/// Network file plus named local coefficients and global vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkCodeFile {
    #[serde(flatten)]
    pub network: NetworkFile,
    pub local: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    pub global: BTreeMap<String, Vec<u32>>,
}

impl NetworkCodeFile {
    /// Rebuilds the code; any global vectors present must match propagation.
    pub fn load(&self) -> Result<NetworkCode, NetError> {
        let (net, n, field) = self.network.load()?;
        let code = NetworkCode::from_named_local(net, n, &field, &self.local)?;
        for (id, g) in &self.global {
            let e = code.network.edge_by_id(id)?;
            if code.global(e) != g.as_slice() {
                return Err(NetError::InconsistentGlobal(id.clone()));
            }
        }
        Ok(code)
    }
}

impl Serialize for NetworkCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NetworkCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        NetworkCodeFile::deserialize(d)?
            .load()
            .map_err(serde::de::Error::custom)
    }
}
