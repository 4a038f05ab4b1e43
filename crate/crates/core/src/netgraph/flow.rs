use std::collections::VecDeque;

use super::{NetError, Network};

/// `n` edge-disjoint source-to-receiver paths, as edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub receiver: usize,
    pub paths: Vec<Vec<usize>>,
}

impl Flow {
    /// Final edge of every path, in path order.
    pub fn last_edges(&self) -> Vec<usize> {
        self.paths
            .iter()
            .map(|p| *p.last().expect("paths are non-empty"))
            .collect()
    }
}

impl Network {
    /// Unit-capacity max-flow value from the source to `receiver`.
    pub fn min_cut(&self, receiver: usize) -> usize {
        let mut used = vec![false; self.edge_count()];
        let mut value = 0;
        while self.augment(receiver, &mut used) {
            value += 1;
        }
        value
    }

    pub fn min_cut_to(&self, receiver: &str) -> Result<usize, NetError> {
        Ok(self.min_cut(self.node(receiver)?))
    }

    /// One flow of value `n` per receiver, in receiver order.
    pub fn edge_disjoint_flows(&self, n: usize) -> Result<Vec<Flow>, NetError> {
        self.receivers()
            .iter()
            .map(|&r| self.flow_to(r, n))
            .collect()
    }

    fn flow_to(&self, receiver: usize, n: usize) -> Result<Flow, NetError> {
        let mut used = vec![false; self.edge_count()];
        for found in 0..n {
            if !self.augment(receiver, &mut used) {
                return Err(NetError::InsufficientCut {
                    receiver: self.node_name(receiver).to_string(),
                    cut: found,
                    required: n,
                });
            }
        }
        // Decompose; the graph is acyclic so every unit of flow is a simple path.
        let mut paths = Vec::with_capacity(n);
        for _ in 0..n {
            let mut path = Vec::new();
            let mut v = self.source();
            while v != receiver {
                let e = *self
                    .out_edges(v)
                    .iter()
                    .find(|&&e| used[e])
                    .expect("flow conservation");
                used[e] = false;
                path.push(e);
                v = self.edge(e).head;
            }
            paths.push(path);
        }
        Ok(Flow { receiver, paths })
    }

    /// BFS over the residual graph; flips the edges of a shortest augmenting path.
    fn augment(&self, receiver: usize, used: &mut [bool]) -> bool {
        if receiver == self.source() {
            return false;
        }
        let mut via: Vec<Option<usize>> = vec![None; self.nodes().len()];
        let mut seen = vec![false; self.nodes().len()];
        seen[self.source()] = true;
        let mut queue = VecDeque::from([self.source()]);
        while let Some(v) = queue.pop_front() {
            if v == receiver {
                break;
            }
            let forward = self
                .out_edges(v)
                .iter()
                .filter(|&&e| !used[e])
                .map(|&e| (e, self.edge(e).head));
            let backward = self
                .in_edges(v)
                .iter()
                .filter(|&&e| used[e])
                .map(|&e| (e, self.edge(e).tail));
            for (e, w) in forward.chain(backward) {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        if !seen[receiver] {
            return false;
        }
        let mut v = receiver;
        while v != self.source() {
            let e = via[v].expect("path back to source");
            used[e] = !used[e];
            let edge = self.edge(e);
            v = if edge.head == v { edge.tail } else { edge.head };
        }
        true
    }
}
