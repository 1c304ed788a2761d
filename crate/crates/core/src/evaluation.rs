//! Comparison of greedy selection against centrality baselines: coverage
//! tables over k, Spearman rank association, and the 80/20 point.

use rayon::prelude::*;
use serde::Serialize;

use crate::centrality::{centrality, to_rank, CentralityScores, Measure, Rank};
use crate::coverage::{centrality_rank_select, greedy_select, rank_select_to_target, Method, SelectionResult};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Selection sizes reported by default, before clamping to the node count.
pub const DEFAULT_KS: [usize; 10] = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50];

/// [`DEFAULT_KS`] clamped to `n`, deduplicated.
pub fn default_ks(n: usize) -> Vec<usize> {
    let mut ks: Vec<usize> = DEFAULT_KS.iter().map(|&k| k.min(n)).filter(|&k| k > 0).collect();
    ks.dedup();
    ks
}

/// Scores for a measure, with the edgeless eigenvector case mapped to all
/// zeros so that ranking still works (it degenerates to label order).
pub fn method_scores(g: &DirectedGraph, measure: Measure) -> Result<CentralityScores> {
    match centrality(g, measure) {
        Err(Error::EigenvectorUndefined) => {
            log::warn!("graph has no edges; eigenvector scores are all zero");
            CentralityScores::from_pairs(measure, g.nodes().iter().map(|n| (n.as_str(), 0.0)))
        }
        other => other,
    }
}

pub fn method_rank(g: &DirectedGraph, measure: Measure) -> Result<Rank> {
    Ok(to_rank(&method_scores(g, measure)?))
}

/// Coverage per (k, method).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageTable {
    pub ks: Vec<usize>,
    pub methods: Vec<Method>,
    /// `cells[row][col]` is the coverage of `methods[col]` after `ks[row]` picks.
    pub cells: Vec<Vec<f64>>,
    pub node_count: usize,
}

impl CoverageTable {
    pub fn column(&self, method: Method) -> Option<Vec<f64>> {
        let col = self.methods.iter().position(|&m| m == method)?;
        Some(self.cells.iter().map(|row| row[col]).collect())
    }

    pub fn cell(&self, k: usize, method: Method) -> Option<f64> {
        let row = self.ks.iter().position(|&x| x == k)?;
        let col = self.methods.iter().position(|&m| m == method)?;
        Some(self.cells[row][col])
    }
}

pub fn coverage_table(g: &DirectedGraph, ks: &[usize]) -> Result<CoverageTable> {
    let n = g.node_count();
    if ks.is_empty() {
        return Err(Error::invalid("no selection sizes given"));
    }
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("selection sizes must be sorted ascending"));
    }
    if ks[0] == 0 || ks[ks.len() - 1] > n {
        return Err(Error::invalid(format!("selection sizes must lie in 1..={n}")));
    }
    let k_max = ks[ks.len() - 1];

    let columns: Vec<SelectionResult> = Method::ALL
        .par_iter()
        .map(|&method| selection_up_to(g, method, k_max))
        .collect::<Result<_>>()?;

    let cells = ks
        .iter()
        .map(|&k| columns.iter().map(|sel| sel.coverage_at(k)).collect())
        .collect();
    Ok(CoverageTable {
        ks: ks.to_vec(),
        methods: Method::ALL.to_vec(),
        cells,
        node_count: n,
    })
}

// Greedy runs to full coverage; its coverage at any larger k stays 1.
fn selection_up_to(g: &DirectedGraph, method: Method, k: usize) -> Result<SelectionResult> {
    match method.measure() {
        None => Ok(greedy_select(g, 1.0)?.truncated(k)),
        Some(measure) => centrality_rank_select(g, method, &method_rank(g, measure)?, k),
    }
}

/// Fractional ranks (1-based, ties share the mean of their positions) in
/// ascending order of value.
pub fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

/// Spearman's rank correlation: the Pearson correlation of the fractional
/// ranks of `a` and `b`.
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    if a.len() < 2 {
        return Err(Error::invalid("spearman needs at least two observations"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::invalid("NaN in spearman input"));
    }
    pearson(&fractional_ranks(a), &fractional_ranks(b))
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (xi, yi) in x.iter().zip(y) {
        let (dx, dy) = (xi - mean_x, yi - mean_y);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("one input is constant"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman correlation of node positions in two ranks over the same nodes.
pub fn spearman_ranks(a: &Rank, b: &Rank) -> Result<f64> {
    let mut pos_b: Vec<(&str, usize)> = b.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    pos_b.sort_unstable();
    if a.len() != b.len() || pos_b.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::invalid("ranks cover different node sets"));
    }
    let mut xs = Vec::with_capacity(a.len());
    let mut ys = Vec::with_capacity(a.len());
    for (i, node) in a.iter().enumerate() {
        let j = pos_b
            .binary_search_by(|(l, _)| (*l).cmp(node.as_str()))
            .map_err(|_| Error::invalid(format!("node `{node}` missing from second rank")))?;
        xs.push(i as f64);
        ys.push(pos_b[j].1 as f64);
    }
    spearman(&xs, &ys)
}

/// Per-node score derived from a greedy selection: earlier picks score
/// higher, unpicked nodes all score 0 (and so share the tail rank).
pub fn selection_scores(g: &DirectedGraph, selection: &SelectionResult) -> Result<Vec<f64>> {
    let p = selection.picks.len();
    let mut scores = vec![0.0; g.node_count()];
    for (i, node) in selection.picks.iter().enumerate() {
        scores[g.require(node.as_str())?] = (p - i) as f64;
    }
    Ok(scores)
}

/// Spearman correlation between the greedy selection order and each baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankCorrelationMatrix {
    pub reference: Method,
    /// `None` where the correlation is undefined (a constant score vector).
    pub entries: Vec<(Method, Option<f64>)>,
}

impl RankCorrelationMatrix {
    pub fn get(&self, method: Method) -> Option<f64> {
        self.entries.iter().find(|(m, _)| *m == method).and_then(|(_, r)| *r)
    }
}

/// Correlates the full greedy order (run to complete coverage) with the
/// in-degree, betweenness, closeness and eigenvector scores.
pub fn rank_correlation_report(g: &DirectedGraph) -> Result<RankCorrelationMatrix> {
    let greedy = greedy_select(g, 1.0)?;
    let reference = selection_scores(g, &greedy)?;
    let entries = Method::CENTRALITY
        .par_iter()
        .map(|&method| {
            let measure = method.measure().expect("centrality method");
            let scores = method_scores(g, measure)?;
            let rho = match spearman(&reference, scores.values()) {
                Ok(rho) => Some(rho),
                Err(Error::UndefinedCorrelation(_)) => None,
                Err(e) => return Err(e),
            };
            Ok((method, rho))
        })
        .collect::<Result<_>>()?;
    Ok(RankCorrelationMatrix {
        reference: Method::Greedy,
        entries,
    })
}

/// Smallest selection reaching a coverage threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParetoPoint {
    pub method: Method,
    pub k: usize,
    pub node_fraction: f64,
    pub coverage: f64,
}

pub fn pareto_point(g: &DirectedGraph, method: Method, threshold: f64) -> Result<ParetoPoint> {
    let selection = match method.measure() {
        None => greedy_select(g, threshold)?,
        Some(measure) => rank_select_to_target(g, method, &method_rank(g, measure)?, threshold)?,
    };
    let k = selection.len();
    Ok(ParetoPoint {
        method,
        k,
        node_fraction: k as f64 / g.node_count() as f64,
        coverage: selection.final_coverage(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn star() -> DirectedGraph {
        DirectedGraph::from_edges(["l1", "l2", "l3", "l4"].map(|l| (l, "hub"))).unwrap()
    }

    fn edgeless(n: usize) -> DirectedGraph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_node(format!("n{i}")).unwrap();
        }
        b.build().0
    }

    #[test]
    fn default_ks_clamp() {
        assert_eq!(default_ks(215), DEFAULT_KS);
        assert_eq!(default_ks(12), [1, 2, 3, 4, 5, 10, 12]);
        assert_eq!(default_ks(3), [1, 2, 3]);
    }

    #[test]
    fn table_star() {
        let t = coverage_table(&star(), &[1]).unwrap();
        assert_eq!(t.cell(1, Method::InDegree), Some(1.0));
        assert_eq!(t.cell(1, Method::Betweenness), Some(1.0));
        assert_eq!(t.cell(1, Method::Eigenvector), Some(1.0));
        assert_eq!(t.cell(1, Method::Greedy), Some(1.0));
        // Outgoing closeness: the hub reaches nobody, each leaf reaches it.
        assert_eq!(t.cell(1, Method::Closeness), Some(0.2));
    }

    #[test]
    fn table_edgeless() {
        let t = coverage_table(&edgeless(10), &[1, 5]).unwrap();
        assert_eq!(t.cells, [vec![0.1; 5], vec![0.5; 5]]);
    }

    #[test]
    fn table_argument_errors() {
        let g = star();
        assert!(coverage_table(&g, &[]).is_err());
        assert!(coverage_table(&g, &[0]).is_err());
        assert!(coverage_table(&g, &[3, 2]).is_err());
        assert!(coverage_table(&g, &[6]).is_err());
    }

    #[test]
    fn fractional_ranks_average_ties() {
        assert_eq!(fractional_ranks(&[10.0, 20.0, 20.0, 5.0]), [2.0, 3.5, 3.5, 1.0]);
        assert_eq!(fractional_ranks(&[1.0, 1.0, 1.0]), [2.0, 2.0, 2.0]);
    }

    #[test]
    fn spearman_reference_values() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(spearman(&a, &a).unwrap(), 1.0);
        assert_eq!(spearman(&a, &[5.0, 4.0, 3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert_eq!(spearman(&a, &[2.0, 1.0, 4.0, 3.0, 5.0]).unwrap(), 0.8);
    }

    #[test]
    fn spearman_errors() {
        assert!(spearman(&[1.0], &[1.0]).is_err());
        assert!(spearman(&[1.0, 2.0], &[1.0]).is_err());
        assert!(matches!(
            spearman(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
    }

    #[test]
    fn spearman_on_ranks() {
        let r = |v: &[&str]| Rank::new(v.iter().map(|s| crate::NodeId::new(*s).unwrap()).collect());
        assert_eq!(spearman_ranks(&r(&["a", "b", "c"]), &r(&["a", "b", "c"])).unwrap(), 1.0);
        assert_eq!(spearman_ranks(&r(&["a", "b", "c"]), &r(&["c", "b", "a"])).unwrap(), -1.0);
        assert!(spearman_ranks(&r(&["a", "b"]), &r(&["a", "c"])).is_err());
        assert!(spearman_ranks(&r(&["a", "b"]), &r(&["a", "a"])).is_err());
    }

    #[test]
    fn correlation_two_nodes() {
        let g = DirectedGraph::from_edges([("a", "b")]).unwrap();
        let m = rank_correlation_report(&g).unwrap();
        assert_eq!(m.get(Method::InDegree), Some(1.0));
        assert_eq!(m.get(Method::Eigenvector), Some(1.0));
        // Every betweenness is 0: the correlation is undefined.
        assert_eq!(m.get(Method::Betweenness), None);
        // a reaches b, b reaches nobody: closeness orders them the other way.
        assert_eq!(m.get(Method::Closeness), Some(-1.0));
    }

    #[test]
    fn greedy_against_itself() {
        let g = DirectedGraph::from_edges([("a", "b"), ("c", "b"), ("b", "d"), ("d", "e"), ("e", "a")]).unwrap();
        let sel = greedy_select(&g, 1.0).unwrap();
        let s = selection_scores(&g, &sel).unwrap();
        assert_eq!(spearman(&s, &s).unwrap(), 1.0);
    }

    #[test]
    fn pareto_cases() {
        let p = pareto_point(&star(), Method::Greedy, 0.8).unwrap();
        assert_eq!((p.k, p.node_fraction, p.coverage), (1, 0.2, 1.0));

        let p = pareto_point(&edgeless(10), Method::Greedy, 0.8).unwrap();
        assert_eq!((p.k, p.node_fraction), (8, 0.8));
        let p = pareto_point(&edgeless(10), Method::Closeness, 0.8).unwrap();
        assert_eq!(p.k, 8);
    }
}
