//! Immutable directed graph with string labels and whole-graph statistics.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque node label. Ordering is bytewise lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::invalid("node label must not be empty"));
        }
        Ok(NodeId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A directed graph without self-loops or parallel edges.
///
/// Nodes are stored in ascending label order and addressed internally by
/// their position in that order, so index order and label order coincide.
/// Both adjacency lists are sorted and are exact transposes of each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    nodes: Vec<NodeId>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl DirectedGraph {
    /// Builds a graph from labelled edges, dropping self-loops and duplicates.
    pub fn from_edges<S, T>(edges: impl IntoIterator<Item = (S, T)>) -> Result<Self>
    where
        S: Into<String>,
        T: Into<String>,
    {
        let mut builder = GraphBuilder::new();
        for (s, t) in edges {
            builder.add_edge(s, t)?;
        }
        Ok(builder.build().0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All node labels in ascending order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn label(&self, index: usize) -> &NodeId {
        &self.nodes[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(label)).ok()
    }

    /// Like [`index_of`](Self::index_of) but reports unknown labels as an error.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn in_adj(&self, index: usize) -> &[usize] {
        &self.in_adj[index]
    }

    pub fn out_adj(&self, index: usize) -> &[usize] {
        &self.out_adj[index]
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.in_adj[index].len()
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.out_adj[index].len()
    }

    /// The nodes with an edge into `label`, in ascending label order.
    pub fn in_neighbors(&self, label: &str) -> Result<Vec<&NodeId>> {
        let v = self.require(label)?;
        Ok(self.in_adj[v].iter().map(|&u| &self.nodes[u]).collect())
    }

    pub fn out_neighbors(&self, label: &str) -> Result<Vec<&NodeId>> {
        let v = self.require(label)?;
        Ok(self.out_adj[v].iter().map(|&u| &self.nodes[u]).collect())
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.out_adj[source].binary_search(&target).is_ok()
    }

    /// Edges as index pairs, sorted by (source, target).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    /// Edges as label pairs, sorted by (source, target).
    pub fn edge_labels(&self) -> impl Iterator<Item = (&NodeId, &NodeId)> + '_ {
        self.edges().map(|(u, v)| (&self.nodes[u], &self.nodes[v]))
    }
}

/// What was dropped while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl IngestReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates == 0 && self.self_loops == 0
    }
}

#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    report: IngestReport,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> Result<()> {
        let label = NodeId::new(label)?.0;
        self.nodes.insert(label);
        Ok(())
    }

    /// Adds `source -> target`. Both endpoints become nodes even when the
    /// edge itself is dropped as a self-loop.
    pub fn add_edge(&mut self, source: impl Into<String>, target: impl Into<String>) -> Result<()> {
        let source = NodeId::new(source)?.0;
        let target = NodeId::new(target)?.0;
        if source == target {
            self.report.self_loops += 1;
            self.nodes.insert(source);
            return Ok(());
        }
        self.nodes.insert(source.clone());
        self.nodes.insert(target.clone());
        if !self.edges.insert((source, target)) {
            self.report.duplicates += 1;
        }
        Ok(())
    }

    pub fn report(&self) -> IngestReport {
        self.report
    }

    pub fn build(self) -> (DirectedGraph, IngestReport) {
        let nodes: Vec<NodeId> = self.nodes.into_iter().map(NodeId).collect();
        let n = nodes.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let find = |label: &str| {
            nodes
                .binary_search_by(|x| x.as_str().cmp(label))
                .expect("edge endpoint registered as node")
        };
        // BTreeSet iteration is sorted by (source, target), so every list
        // below comes out sorted without an extra pass.
        for (s, t) in &self.edges {
            let (u, v) = (find(s), find(t));
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let graph = DirectedGraph {
            nodes,
            out_adj,
            in_adj,
            edge_count: self.edges.len(),
        };
        (graph, self.report)
    }
}

/// Size, density and average degree of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// `m / (n (n - 1))`, or 0 when `n < 2`.
    pub density: f64,
    /// Total-degree average `2m / n`, or 0 for the empty graph.
    pub avg_degree: f64,
}

pub fn graph_stats(g: &DirectedGraph) -> GraphStats {
    let n = g.node_count();
    let m = g.edge_count();
    let density = if n >= 2 {
        m as f64 / (n * (n - 1)) as f64
    } else {
        0.0
    };
    let avg_degree = if n >= 1 {
        (2 * m) as f64 / n as f64
    } else {
        0.0
    };
    GraphStats {
        n,
        m,
        density,
        avg_degree,
    }
}
