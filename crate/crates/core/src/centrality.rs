//! Baseline centrality measures and deterministic descending ranks.
//!
//! Every measure returns one non-negative score per node, aligned with
//! [`DirectedGraph::nodes`]. [`to_rank`] orders nodes by score descending and
//! breaks ties by label ascending, so equal inputs always give equal ranks.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    InDegree,
    OutDegree,
    TotalDegree,
    Betweenness,
    Closeness,
    Eigenvector,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::InDegree => "in_degree",
            Measure::OutDegree => "out_degree",
            Measure::TotalDegree => "total_degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Eigenvector => "eigenvector",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "in_degree" | "indegree" => Measure::InDegree,
            "out_degree" | "outdegree" => Measure::OutDegree,
            "total_degree" | "degree" => Measure::TotalDegree,
            "betweenness" => Measure::Betweenness,
            "closeness" => Measure::Closeness,
            "eigenvector" => Measure::Eigenvector,
            other => return Err(Error::invalid(format!("unknown centrality measure `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    In,
    Out,
    Total,
}

/// Scores of one measure, keyed by node label in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    measure: Measure,
    nodes: Vec<NodeId>,
    values: Vec<f64>,
}

impl CentralityScores {
    fn for_graph(g: &DirectedGraph, measure: Measure, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), g.node_count());
        CentralityScores {
            measure,
            nodes: g.nodes().to_vec(),
            values,
        }
    }

    /// Builds scores from arbitrary `(label, score)` pairs. Scores must be
    /// finite and non-negative and labels unique.
    pub fn from_pairs<L: Into<String>>(
        measure: Measure,
        pairs: impl IntoIterator<Item = (L, f64)>,
    ) -> Result<Self> {
        let mut pairs = pairs
            .into_iter()
            .map(|(l, s)| Ok((NodeId::new(l)?, s)))
            .collect::<Result<Vec<_>>>()?;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid(format!("duplicate node `{}` in scores", w[0].0)));
        }
        if let Some((l, s)) = pairs.iter().find(|(_, s)| !s.is_finite() || *s < 0.0) {
            return Err(Error::invalid(format!("score of `{l}` must be finite and non-negative, got {s}")));
        }
        let (nodes, values) = pairs.into_iter().unzip();
        Ok(CentralityScores {
            measure,
            nodes,
            values,
        })
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.nodes
            .binary_search_by(|n| n.as_str().cmp(label))
            .ok()
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, f64)> + '_ {
        self.nodes.iter().zip(self.values.iter().copied())
    }

    pub fn to_rank(&self) -> Rank {
        to_rank(self)
    }
}

/// Nodes ordered best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Rank(Vec<NodeId>);

impl Rank {
    pub fn new(order: Vec<NodeId>) -> Self {
        Rank(order)
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NodeId> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

/// Sorts by score descending, then label ascending. No epsilon: any
/// difference in score decides the order.
pub fn to_rank(scores: &CentralityScores) -> Rank {
    let mut order: Vec<usize> = (0..scores.values.len()).collect();
    order.sort_by(|&a, &b| {
        scores.values[b]
            .total_cmp(&scores.values[a])
            .then_with(|| scores.nodes[a].cmp(&scores.nodes[b]))
    });
    Rank(order.into_iter().map(|i| scores.nodes[i].clone()).collect())
}

/// Computes any of the supported measures.
pub fn centrality(g: &DirectedGraph, measure: Measure) -> Result<CentralityScores> {
    Ok(match measure {
        Measure::InDegree => degree_centrality(g, DegreeMode::In),
        Measure::OutDegree => degree_centrality(g, DegreeMode::Out),
        Measure::TotalDegree => degree_centrality(g, DegreeMode::Total),
        Measure::Betweenness => betweenness_centrality(g),
        Measure::Closeness => closeness_centrality(g),
        Measure::Eigenvector => eigenvector_centrality(g)?,
    })
}

pub fn degree_centrality(g: &DirectedGraph, mode: DegreeMode) -> CentralityScores {
    let n = g.node_count();
    let (measure, values) = match mode {
        DegreeMode::In => (Measure::InDegree, (0..n).map(|v| g.in_degree(v) as f64).collect()),
        DegreeMode::Out => (Measure::OutDegree, (0..n).map(|v| g.out_degree(v) as f64).collect()),
        DegreeMode::Total => (
            Measure::TotalDegree,
            (0..n).map(|v| (g.in_degree(v) + g.out_degree(v)) as f64).collect(),
        ),
    };
    CentralityScores::for_graph(g, measure, values)
}

// Sources per parallel work unit. Partial sums are combined in chunk order,
// which keeps the floating-point result independent of thread scheduling.
const BETWEENNESS_CHUNK: usize = 32;

/// Raw (unnormalized) shortest-path betweenness over ordered pairs, using
/// Brandes' dependency accumulation with one BFS per source.
pub fn betweenness_centrality(g: &DirectedGraph) -> CentralityScores {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BETWEENNESS_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut state = BrandesState::new(n);
            for &s in chunk {
                state.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for partial in partials {
        for (t, p) in total.iter_mut().zip(partial) {
            *t += p;
        }
    }
    CentralityScores::for_graph(g, Measure::Betweenness, total)
}

struct BrandesState {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<usize>>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &DirectedGraph, s: usize, acc: &mut [f64]) {
        self.dist.fill(-1);
        self.sigma.fill(0.0);
        self.delta.fill(0.0);
        self.preds.iter_mut().for_each(Vec::clear);
        self.stack.clear();

        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in g.out_adj(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }

        while let Some(w) = self.stack.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Closeness over outgoing shortest paths, scaled by the reachable fraction:
/// with `r` nodes reachable from `v` at total distance `d`, the score is
/// `(r / (n - 1)) * (r / d)`, and 0 when nothing is reachable.
pub fn closeness_centrality(g: &DirectedGraph) -> CentralityScores {
    let n = g.node_count();
    let values = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], VecDeque::with_capacity(n)),
            |(dist, queue), v| {
                dist.fill(usize::MAX);
                dist[v] = 0;
                queue.push_back(v);
                let (mut reached, mut total) = (0usize, 0usize);
                while let Some(u) = queue.pop_front() {
                    for &w in g.out_adj(u) {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            reached += 1;
                            total += dist[w];
                            queue.push_back(w);
                        }
                    }
                }
                if reached == 0 {
                    0.0
                } else {
                    let r = reached as f64;
                    (r / (n - 1) as f64) * (r / total as f64)
                }
            },
        )
        .collect();
    CentralityScores::for_graph(g, Measure::Closeness, values)
}

/// Settings for the eigenvector power iteration.
#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    /// Stop once successive unit vectors differ by at most this in L2.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

/// Outcome of an eigenvector computation, with diagnostics.
#[derive(Debug, Clone)]
pub struct EigenvectorRun {
    pub scores: CentralityScores,
    /// Rayleigh-quotient estimate of the dominant eigenvalue.
    pub eigenvalue: f64,
    pub iterations: usize,
    pub converged: bool,
    /// The graph is acyclic, so the adjacency matrix is nilpotent and the
    /// scores are L2-normalized in-degrees instead.
    pub in_degree_fallback: bool,
}

/// Eigenvector centrality on incoming edges: a node's score is proportional
/// to the sum of its in-neighbors' scores. The result has unit L2 norm.
pub fn eigenvector_centrality(g: &DirectedGraph) -> Result<CentralityScores> {
    let run = eigenvector_power_iteration(g, PowerIteration::default())?;
    if run.in_degree_fallback {
        log::warn!("eigenvector iteration collapses on an acyclic graph; using in-degree scores");
    } else if !run.converged {
        log::warn!(
            "eigenvector iteration did not converge in {} iterations",
            run.iterations
        );
    }
    Ok(run.scores)
}

pub fn eigenvector_power_iteration(g: &DirectedGraph, cfg: PowerIteration) -> Result<EigenvectorRun> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(Error::EigenvectorUndefined);
    }

    // Without a cycle, repeated multiplication reaches the zero vector in at
    // most n steps.
    if is_acyclic(g) {
        let mut values: Vec<f64> = (0..n).map(|v| g.in_degree(v) as f64).collect();
        normalize(&mut values);
        let eigenvalue = rayleigh(g, &values);
        return Ok(EigenvectorRun {
            scores: CentralityScores::for_graph(g, Measure::Eigenvector, values),
            eigenvalue,
            iterations: 0,
            converged: false,
            in_degree_fallback: true,
        });
    }

    // Iterating with A^T + I keeps the eigenvectors of A^T but removes the
    // oscillation plain iteration shows on periodic graphs (cycles,
    // bipartite digraphs).
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        iterations += 1;
        for v in 0..n {
            next[v] = x[v] + g.in_adj(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        normalize(&mut next);
        let diff = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        std::mem::swap(&mut x, &mut next);
        if diff <= cfg.tolerance {
            converged = true;
            break;
        }
    }
    let eigenvalue = rayleigh(g, &x);
    Ok(EigenvectorRun {
        scores: CentralityScores::for_graph(g, Measure::Eigenvector, x),
        eigenvalue,
        iterations,
        converged,
        in_degree_fallback: false,
    })
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

// x^T (A^T x) for a unit vector x.
fn rayleigh(g: &DirectedGraph, x: &[f64]) -> f64 {
    (0..g.node_count())
        .map(|v| x[v] * g.in_adj(v).iter().map(|&u| x[u]).sum::<f64>())
        .sum()
}

fn is_acyclic(g: &DirectedGraph) -> bool {
    let n = g.node_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &w in g.out_adj(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    seen == n
}
