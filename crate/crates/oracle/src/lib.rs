//! Slow, definition-level reference implementations.
//!
//! Nothing here reuses the algorithms in `netcover`: only the graph type and
//! result containers are shared. Each routine refuses instances beyond a
//! hard size bound instead of running for hours.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, Schur};
use netcover::centrality::{CentralityScores, Measure};
use netcover::coverage::{Method, SelectionResult};
use netcover::{DirectedGraph, NodeId};
use thiserror::Error;

/// Largest number of subsets [`brute_force_max_coverage`] will enumerate.
pub const MAX_SUBSETS: u128 = 10_000_000;

/// Largest graph [`definitional_centrality`] accepts.
pub const MAX_DEFINITIONAL_NODES: usize = 50;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large: {what} is {actual}, bound is {bound}")]
    TooLarge {
        what: &'static str,
        actual: u128,
        bound: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("eigenvector undefined: graph has no edges")]
    EigenvectorUndefined,
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, OracleError>;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn coverage_bits(g: &DirectedGraph, v: usize) -> Vec<u64> {
    let mut bits = vec![0u64; g.node_count().div_ceil(64)];
    let mut set = |u: usize| bits[u / 64] |= 1 << (u % 64);
    set(v);
    for u in 0..g.node_count() {
        if g.has_edge(u, v) {
            set(u);
        }
    }
    bits
}

/// Best k-subset by exhaustive enumeration. Subsets are visited in
/// lexicographic order of their sorted node indices and only a strictly
/// better one replaces the incumbent, so ties resolve to the
/// lexicographically smallest set.
pub fn brute_force_max_coverage(g: &DirectedGraph, k: usize) -> Result<(Vec<NodeId>, f64)> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(OracleError::InvalidArgument(format!("k must lie in 1..={n}, got {k}")));
    }
    let subsets = binomial(n, k);
    if subsets > MAX_SUBSETS {
        return Err(OracleError::TooLarge {
            what: "subset count C(n, k)",
            actual: subsets,
            bound: MAX_SUBSETS,
        });
    }
    let cover: Vec<Vec<u64>> = (0..n).map(|v| coverage_bits(g, v)).collect();
    let words = n.div_ceil(64);

    let mut combo: Vec<usize> = (0..k).collect();
    let mut best: Option<(u32, Vec<usize>)> = None;
    loop {
        let mut union = vec![0u64; words];
        for &v in &combo {
            for (w, c) in union.iter_mut().zip(&cover[v]) {
                *w |= c;
            }
        }
        let count: u32 = union.iter().map(|w| w.count_ones()).sum();
        if best.as_ref().is_none_or(|(b, _)| count > *b) {
            best = Some((count, combo.clone()));
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
    let (count, set) = best.expect("at least one subset");
    Ok((
        set.into_iter().map(|v| g.label(v).clone()).collect(),
        count as f64 / n as f64,
    ))
}

/// Greedy selection that rescans every unselected node each round.
///
/// Candidates are visited in in-degree-descending, label-ascending order and
/// the first candidate with the largest gain wins.
pub fn naive_greedy(g: &DirectedGraph, target: f64) -> Result<SelectionResult> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(OracleError::InvalidArgument(format!("target must lie in (0, 1], got {target}")));
    }
    let n = g.node_count();
    if n == 0 {
        return Err(OracleError::InvalidArgument("empty graph".into()));
    }
    let in_deg = |v: &NodeId| g.in_neighbors(v.as_str()).expect("own node").len();
    let mut candidates: Vec<NodeId> = g.nodes().to_vec();
    candidates.sort_by(|a, b| in_deg(b).cmp(&in_deg(a)).then_with(|| a.cmp(b)));

    let coverage_of = |v: &NodeId| -> BTreeSet<NodeId> {
        let mut set: BTreeSet<NodeId> = g
            .in_neighbors(v.as_str())
            .expect("own node")
            .into_iter()
            .cloned()
            .collect();
        set.insert(v.clone());
        set
    };

    let mut covered: BTreeSet<NodeId> = BTreeSet::new();
    let mut result = SelectionResult {
        method: Method::Greedy,
        picks: Vec::new(),
        cumulative: Vec::new(),
        covered: Vec::new(),
        node_count: n,
        target: Some(target),
    };
    while (covered.len() as f64 / n as f64) < target {
        let mut best: Option<(usize, usize)> = None;
        for (i, v) in candidates.iter().enumerate() {
            if result.picks.contains(v) {
                continue;
            }
            let gain = coverage_of(v).difference(&covered).count();
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best.expect("unselected node remains");
        let v = candidates[i].clone();
        covered.extend(coverage_of(&v));
        result.picks.push(v);
        result.covered.push(covered.len());
        result.cumulative.push(covered.len() as f64 / n as f64);
    }
    Ok(result)
}

/// Recomputes a centrality measure straight from its definition.
///
/// Betweenness enumerates every shortest path explicitly, closeness sums
/// Floyd–Warshall distances, and eigenvector solves the dense eigenproblem
/// (Schur form for the Perron root, SVD for its null vector).
pub fn definitional_centrality(g: &DirectedGraph, measure: Measure) -> Result<CentralityScores> {
    let n = g.node_count();
    if n > MAX_DEFINITIONAL_NODES {
        return Err(OracleError::TooLarge {
            what: "node count",
            actual: n as u128,
            bound: MAX_DEFINITIONAL_NODES as u128,
        });
    }
    let values = match measure {
        Measure::InDegree | Measure::OutDegree | Measure::TotalDegree => {
            let mut ins = vec![0.0; n];
            let mut outs = vec![0.0; n];
            for u in 0..n {
                for v in 0..n {
                    if g.has_edge(u, v) {
                        outs[u] += 1.0;
                        ins[v] += 1.0;
                    }
                }
            }
            match measure {
                Measure::InDegree => ins,
                Measure::OutDegree => outs,
                _ => ins.iter().zip(&outs).map(|(a, b)| a + b).collect(),
            }
        }
        Measure::Betweenness => betweenness_by_enumeration(g),
        Measure::Closeness => closeness_by_floyd_warshall(g),
        Measure::Eigenvector => dense_eigenvector(g)?,
    };
    let pairs = g.nodes().iter().map(|l| l.as_str()).zip(values);
    Ok(CentralityScores::from_pairs(measure, pairs).expect("definitional scores are valid"))
}

const UNREACHABLE: usize = usize::MAX;

fn floyd_warshall(g: &DirectedGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                row[v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                if d[k][j] != UNREACHABLE && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn betweenness_by_enumeration(g: &DirectedGraph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd_warshall(g);
    let mut scores = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] == UNREACHABLE {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut path = vec![s];
            extend_shortest(g, &d, t, &mut path, &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                scores[v] += through[v] as f64 / total;
            }
        }
    }
    scores
}

fn extend_shortest(g: &DirectedGraph, d: &[Vec<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let here = *path.last().expect("non-empty path");
    if here == t {
        out.push(path.clone());
        return;
    }
    for w in 0..g.node_count() {
        if g.has_edge(here, w) && d[w][t] != UNREACHABLE && d[w][t] + 1 == d[here][t] {
            path.push(w);
            extend_shortest(g, d, t, path, out);
            path.pop();
        }
    }
}

fn closeness_by_floyd_warshall(g: &DirectedGraph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd_warshall(g);
    (0..n)
        .map(|v| {
            let reach: Vec<usize> = (0..n)
                .filter(|&u| u != v && d[v][u] != UNREACHABLE)
                .map(|u| d[v][u])
                .collect();
            if reach.is_empty() {
                return 0.0;
            }
            let r = reach.len() as f64;
            let total: usize = reach.iter().sum();
            (r / (n - 1) as f64) * (r / total as f64)
        })
        .collect()
}

fn has_cycle(g: &DirectedGraph) -> bool {
    // A cycle exists iff some node reaches itself.
    let d = floyd_warshall(g);
    (0..g.node_count()).any(|v| (0..g.node_count()).any(|u| u != v && d[v][u] != UNREACHABLE && d[u][v] != UNREACHABLE))
}

fn dense_eigenvector(g: &DirectedGraph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(OracleError::EigenvectorUndefined);
    }
    if !has_cycle(g) {
        let ins: Vec<f64> = (0..n)
            .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).count() as f64)
            .collect();
        let norm = ins.iter().map(|x| x * x).sum::<f64>().sqrt();
        return Ok(ins.into_iter().map(|x| x / norm).collect());
    }

    // M[v][u] = 1 for every edge u -> v, so (M x)_v sums over in-neighbors.
    let m = DMatrix::from_fn(n, n, |v, u| if g.has_edge(u, v) { 1.0 } else { 0.0 });
    // QR iteration can stall when eigenvalues share a modulus (e.g. +-sqrt(2)
    // on a bidirectional path). M + cI has the same eigenvectors, and its
    // eigenvalue of largest real part is still the Perron root plus c, so
    // retry with a few shifts until one converges.
    let perron = [1.0, 0.37, 2.71, 5.3]
        .into_iter()
        .find_map(|c| {
            let schur = Schur::try_new(&m + DMatrix::identity(n, n) * c, f64::EPSILON, 100_000)?;
            let top = schur.complex_eigenvalues().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            Some(top - c)
        })
        .ok_or(OracleError::NoConvergence("Schur decomposition"))?;
    let shifted = &m - DMatrix::identity(n, n) * perron;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    let mut x: Vec<f64> = v_t.row(idx).iter().copied().collect();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(x.into_iter().map(|v| (v / norm).max(0.0)).collect())
}
