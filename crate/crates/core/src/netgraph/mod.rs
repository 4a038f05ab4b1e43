//! Acyclic multicast networks with unit-capacity edges.
//!
//! Edges, not nodes, carry coding state. Multi-edges are allowed. The edge
//! visit order is a topological order computed once at construction (Kahn's
//! algorithm over edges, ready edges taken in edge-id order) and every
//! algorithm in the crate follows it.

mod builtin;
mod code;
mod flow;

pub use builtin::{butterfly, butterfly_code, combination, parallel, ButterflyVariant};
pub(crate) use code::global_from_local;
pub use code::{NetworkCode, NetworkCodeFile};
pub use flow::Flow;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fmatrix::MatrixError;
use crate::gf::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("network contains a directed cycle")]
    AcyclicityViolated,
    #[error("source `{0}` has incoming edges")]
    SourceHasInEdges(String),
    #[error("receiver `{receiver}` has min-cut {cut}, below the required {required}")]
    InsufficientCut {
        receiver: String,
        cut: usize,
        required: usize,
    },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("edge `{edge}` expects {expected} coefficients, got {got}")]
    LocalLength {
        edge: String,
        expected: usize,
        got: usize,
    },
    #[error("global vector of edge `{0}` disagrees with its local coefficients")]
    InconsistentGlobal(String),
    #[error("decoding matrix of receiver `{receiver}` is singular (rank {rank})")]
    SingularDecodingMatrix { receiver: String, rank: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    nodes: Vec<String>,
    node_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    source: usize,
    receivers: Vec<usize>,
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
    by_id: Vec<usize>,
}

impl Network {
    /// Builds a network from node ids and `(edge id, tail, head)` triples.
    pub fn new<A: AsRef<str>, B: AsRef<str>, C: AsRef<str>>(
        nodes: &[A],
        edges: &[(B, B, B)],
        source: &str,
        receivers: &[C],
    ) -> Result<Network, NetError> {
        let mut node_index = HashMap::new();
        let nodes: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in nodes.iter().enumerate() {
            if node_index.insert(n.clone(), i).is_some() {
                return Err(NetError::DuplicateNode(n.clone()));
            }
        }
        let lookup = |name: &str| {
            node_index
                .get(name)
                .copied()
                .ok_or_else(|| NetError::UnknownNode(name.to_string()))
        };
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::new();
        for (id, tail, head) in edges {
            let id = id.as_ref().to_string();
            if edge_index.insert(id.clone(), edge_list.len()).is_some() {
                return Err(NetError::DuplicateEdge(id));
            }
            edge_list.push(Edge {
                id,
                tail: lookup(tail.as_ref())?,
                head: lookup(head.as_ref())?,
            });
        }
        let source = lookup(source)?;
        let receivers = receivers
            .iter()
            .map(|r| lookup(r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;

        let mut in_edges = vec![Vec::new(); nodes.len()];
        let mut out_edges = vec![Vec::new(); nodes.len()];
        for (i, e) in edge_list.iter().enumerate() {
            out_edges[e.tail].push(i);
            in_edges[e.head].push(i);
        }
        if !in_edges[source].is_empty() {
            return Err(NetError::SourceHasInEdges(nodes[source].clone()));
        }
        let topo = edge_topological_order(&edge_list, &in_edges, &out_edges)?;
        let mut by_id: Vec<usize> = (0..edge_list.len()).collect();
        by_id.sort_by(|&a, &b| edge_list[a].id.cmp(&edge_list[b].id));
        Ok(Network {
            nodes,
            node_index,
            edges: edge_list,
            edge_index,
            source,
            receivers,
            in_edges,
            out_edges,
            topo,
            by_id,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.nodes[v]
    }

    pub fn node(&self, name: &str) -> Result<usize, NetError> {
        self.node_index
            .get(name)
            .copied()
            .ok_or_else(|| NetError::UnknownNode(name.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize, NetError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| NetError::UnknownEdge(id.to_string()))
    }

    pub fn edges_by_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, NetError> {
        ids.iter().map(|id| self.edge_by_id(id.as_ref())).collect()
    }

    pub fn edge_ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn receivers(&self) -> &[usize] {
        &self.receivers
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edge visit order used by every algorithm.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Edge indices sorted by edge id; subset enumeration follows this order.
    pub fn edges_sorted_by_id(&self) -> &[usize] {
        &self.by_id
    }

    /// Sorts edge indices by id, the canonical order for reported subsets.
    pub fn sort_by_id(&self, edges: &mut [usize]) {
        edges.sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
    }
}

fn edge_topological_order(
    edges: &[Edge],
    in_edges: &[Vec<usize>],
    out_edges: &[Vec<usize>],
) -> Result<Vec<usize>, NetError> {
    let mut pending: Vec<usize> = in_edges.iter().map(Vec::len).collect();
    let mut ready = BinaryHeap::new();
    for (v, outs) in out_edges.iter().enumerate() {
        if pending[v] == 0 {
            for &e in outs {
                ready.push(Reverse((edges[e].id.as_str(), e)));
            }
        }
    }
    let mut order = Vec::with_capacity(edges.len());
    while let Some(Reverse((_, e))) = ready.pop() {
        order.push(e);
        let head = edges[e].head;
        pending[head] -= 1;
        if pending[head] == 0 {
            for &o in &out_edges[head] {
                ready.push(Reverse((edges[o].id.as_str(), o)));
            }
        }
    }
    if order.len() != edges.len() {
        return Err(NetError::AcyclicityViolated);
    }
    Ok(order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// Network file: topology plus multicast dimension and field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub source: String,
    pub receivers: Vec<String>,
    pub n: usize,
    pub field: crate::gf::FieldDesc,
}

impl NetworkFile {
    pub fn from_network(net: &Network, n: usize, field: &FieldSpec) -> NetworkFile {
        NetworkFile {
            nodes: net.nodes.clone(),
            edges: net
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    tail: net.nodes[e.tail].clone(),
                    head: net.nodes[e.head].clone(),
                })
                .collect(),
            source: net.nodes[net.source].clone(),
            receivers: net
                .receivers
                .iter()
                .map(|&r| net.nodes[r].clone())
                .collect(),
            n,
            field: field.desc(),
        }
    }

    /// Parses the topology and checks that every receiver has min-cut at least `n`.
    pub fn load(&self) -> Result<(Network, usize, FieldSpec), NetError> {
        let edges: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.tail.as_str(), e.head.as_str()))
            .collect();
        let net = Network::new(&self.nodes, &edges, &self.source, &self.receivers)?;
        let field = FieldSpec::try_from(self.field).map_err(MatrixError::from)?;
        for &r in net.receivers() {
            let cut = net.min_cut(r);
            if cut < self.n {
                return Err(NetError::InsufficientCut {
                    receiver: net.node_name(r).to_string(),
                    cut,
                    required: self.n,
                });
            }
        }
        Ok((net, self.n, field))
    }
}
