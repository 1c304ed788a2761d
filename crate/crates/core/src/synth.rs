//! Seeded synthetic directed graphs.
//!
//! All randomness comes from a ChaCha8 stream (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64(seed)`. Uniform reals are `Rng::gen::<f64>()`
//! (53 high bits of one `u64`) and bounded integers use `Rng::gen_range`, both
//! from `rand` 0.8. The same configuration always yields the same graph.
//!
//! Node `i` of an `n`-node graph is labelled with `i` zero-padded to the width
//! of `n - 1`, so label order equals creation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Every ordered pair is an edge independently with probability `p`.
    ErdosRenyi { p: f64 },
    /// Nodes arrive one at a time and link to `edges_per_node` distinct
    /// earlier nodes, chosen with probability proportional to in-degree + 1.
    PreferentialAttachment { edges_per_node: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        match self.model {
            Model::ErdosRenyi { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::invalid(format!("p must lie in [0, 1], got {p}")))
            }
            Model::PreferentialAttachment { edges_per_node: 0 } => {
                Err(Error::invalid("edges_per_node must be at least 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<DirectedGraph> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok(match self.model {
            Model::ErdosRenyi { p } => erdos_renyi(self.n, p, &mut rng),
            Model::PreferentialAttachment { edges_per_node } => preferential(self.n, edges_per_node, &mut rng),
        })
    }
}

pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    SynthConfig {
        model: Model::ErdosRenyi { p },
        n,
        seed,
    }
    .generate()
}

pub fn gen_preferential(n: usize, edges_per_node: usize, seed: u64) -> Result<DirectedGraph> {
    SynthConfig {
        model: Model::PreferentialAttachment { edges_per_node },
        n,
        seed,
    }
    .generate()
}

pub fn node_label(i: usize, n: usize) -> String {
    let width = (n.saturating_sub(1)).to_string().len();
    format!("{i:0width$}")
}

fn with_all_nodes(n: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_node(node_label(i, n)).expect("non-empty label");
    }
    b
}

// Pairs are visited source-major, target-minor, one draw per pair.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> DirectedGraph {
    let mut b = with_all_nodes(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen::<f64>() < p {
                b.add_edge(node_label(u, n), node_label(v, n)).expect("non-empty label");
            }
        }
    }
    b.build().0
}

// Node i draws min(epn, i) targets among 0..i without replacement. Each draw
// picks an integer below the remaining weight total and walks the weights in
// index order. In-degrees update after the node has placed all its edges.
fn preferential(n: usize, epn: usize, rng: &mut ChaCha8Rng) -> DirectedGraph {
    let mut b = with_all_nodes(n);
    let mut in_degree = vec![0u64; n];
    let mut chosen = Vec::with_capacity(epn);
    for i in 1..n {
        chosen.clear();
        let mut total: u64 = (0..i).map(|j| in_degree[j] + 1).sum();
        for _ in 0..epn.min(i) {
            let mut r = rng.gen_range(0..total);
            let target = (0..i)
                .filter(|j| !chosen.contains(j))
                .find(|&j| {
                    let w = in_degree[j] + 1;
                    if r < w {
                        true
                    } else {
                        r -= w;
                        false
                    }
                })
                .expect("draw falls inside the weight total");
            total -= in_degree[target] + 1;
            chosen.push(target);
        }
        for &t in &chosen {
            in_degree[t] += 1;
            b.add_edge(node_label(i, n), node_label(t, n)).expect("non-empty label");
        }
    }
    b.build().0
}
