//! Node coverage and coverage-maximizing node selection.
//!
//! A node covers itself and all of its in-neighbors. The coverage of a set
//! is the union of its members' coverage, and network coverage is that
//! union's size over the node count.
//!
//! [`greedy_select`] repeatedly adds the node with the largest number of
//! not-yet-covered nodes in its coverage. Candidates are scanned in
//! in-degree-descending order (label ascending on ties). A node's marginal
//! gain can never exceed `in_degree + 1`, so the scan stops as soon as the
//! best gain found so far reaches that bound for the next candidate. Every
//! later candidate has an in-degree no larger, which makes the lazy scan pick
//! exactly what a full rescan would.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::centrality::{Measure, Rank};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

/// Default target coverage, following the 80/20 rule.
pub const DEFAULT_TARGET: f64 = 0.8;

/// How a set of nodes was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Greedy,
    InDegree,
    Betweenness,
    Closeness,
    Eigenvector,
}

impl Method {
    /// Column order of the coverage table: the four centrality baselines,
    /// then greedy.
    pub const ALL: [Method; 5] = [
        Method::InDegree,
        Method::Betweenness,
        Method::Closeness,
        Method::Eigenvector,
        Method::Greedy,
    ];

    pub const CENTRALITY: [Method; 4] = [
        Method::InDegree,
        Method::Betweenness,
        Method::Closeness,
        Method::Eigenvector,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::InDegree => "in_degree",
            Method::Betweenness => "betweenness",
            Method::Closeness => "closeness",
            Method::Eigenvector => "eigenvector",
        }
    }

    /// The centrality measure behind a rank-based method.
    pub fn measure(self) -> Option<Measure> {
        match self {
            Method::Greedy => None,
            Method::InDegree => Some(Measure::InDegree),
            Method::Betweenness => Some(Measure::Betweenness),
            Method::Closeness => Some(Measure::Closeness),
            Method::Eigenvector => Some(Measure::Eigenvector),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "greedy" => Method::Greedy,
            "in_degree" | "indegree" => Method::InDegree,
            "betweenness" => Method::Betweenness,
            "closeness" => Method::Closeness,
            "eigenvector" => Method::Eigenvector,
            other => return Err(Error::invalid(format!("unknown selection method `{other}`"))),
        })
    }
}

/// Covered nodes of a selection and the covered fraction of the network.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSet {
    pub covered: BTreeSet<NodeId>,
    pub fraction: f64,
}

/// Ordered picks with the network coverage reached after each one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionResult {
    pub method: Method,
    pub picks: Vec<NodeId>,
    /// Covered fraction after each pick.
    pub cumulative: Vec<f64>,
    /// Covered node count after each pick.
    pub covered: Vec<usize>,
    pub node_count: usize,
    /// Coverage goal for target-driven selections.
    pub target: Option<f64>,
}

impl SelectionResult {
    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn final_coverage(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Coverage after the first `k` picks; saturates at the last pick.
    pub fn coverage_at(&self, k: usize) -> f64 {
        match k {
            0 => 0.0,
            k => self.cumulative[k.min(self.cumulative.len()) - 1],
        }
    }

    /// Keeps only the first `k` picks.
    pub fn truncated(mut self, k: usize) -> Self {
        self.picks.truncate(k);
        self.cumulative.truncate(k);
        self.covered.truncate(k);
        self
    }
}

pub fn node_coverage(g: &DirectedGraph, v: &str) -> Result<BTreeSet<NodeId>> {
    let i = g.require(v)?;
    Ok(std::iter::once(i)
        .chain(g.in_adj(i).iter().copied())
        .map(|u| g.label(u).clone())
        .collect())
}

pub fn set_coverage<'a>(g: &DirectedGraph, set: impl IntoIterator<Item = &'a str>) -> Result<CoverageSet> {
    let mut tracker = Tracker::new(g);
    for label in set {
        tracker.add(g, g.require(label)?);
    }
    let covered = tracker
        .covered
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| g.label(i).clone())
        .collect();
    Ok(CoverageSet {
        covered,
        fraction: tracker.fraction(),
    })
}

/// `covered / n >= target`, evaluated the same way everywhere.
pub fn reaches(covered: usize, n: usize, target: f64) -> bool {
    n > 0 && covered as f64 / n as f64 >= target
}

fn check_target(target: f64) -> Result<()> {
    if target > 0.0 && target <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("target coverage must lie in (0, 1], got {target}")))
    }
}

/// Greedy high-coverage selection, run until coverage reaches `target`.
pub fn greedy_select(g: &DirectedGraph, target: f64) -> Result<SelectionResult> {
    check_target(target)?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::invalid("cannot select from an empty graph"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.in_degree(b).cmp(&g.in_degree(a)).then(a.cmp(&b)));

    let mut tracker = Tracker::new(g);
    let mut selected = vec![false; n];
    let mut result = SelectionResult {
        method: Method::Greedy,
        picks: Vec::new(),
        cumulative: Vec::new(),
        covered: Vec::new(),
        node_count: n,
        target: Some(target),
    };

    while !reaches(tracker.count, n, target) {
        let mut best: Option<(usize, usize)> = None;
        for &v in order.iter().filter(|&&v| !selected[v]) {
            if let Some((_, gain)) = best {
                if gain >= g.in_degree(v) + 1 {
                    break;
                }
            }
            let gain = tracker.marginal(g, v);
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((v, gain));
            }
        }
        // Some node is still uncovered and covers itself, so a candidate with
        // positive gain exists.
        let (v, gain) = best.expect("uncovered node remains selectable");
        debug_assert!(gain >= 1);
        selected[v] = true;
        tracker.add(g, v);
        result.push(g.label(v).clone(), tracker.count);
    }
    Ok(result)
}

/// The first `k` greedy picks (fewer if the whole network is covered
/// earlier).
pub fn greedy_select_k(g: &DirectedGraph, k: usize) -> Result<SelectionResult> {
    check_k(g, k)?;
    let mut result = greedy_select(g, 1.0)?.truncated(k);
    result.target = None;
    Ok(result)
}

fn check_k(g: &DirectedGraph, k: usize) -> Result<()> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k must lie in 1..={n}, got {k}")));
    }
    Ok(())
}

/// Takes the first `k` nodes of `rank` and records coverage after each.
/// Unlike greedy, coverage here may stall between picks.
pub fn centrality_rank_select(
    g: &DirectedGraph,
    method: Method,
    rank: &Rank,
    k: usize,
) -> Result<SelectionResult> {
    check_k(g, k)?;
    if rank.len() < k {
        return Err(Error::invalid(format!("rank has {} nodes, fewer than k = {k}", rank.len())));
    }
    let n = g.node_count();
    let mut tracker = Tracker::new(g);
    let mut seen = vec![false; n];
    let mut result = SelectionResult {
        method,
        picks: Vec::with_capacity(k),
        cumulative: Vec::with_capacity(k),
        covered: Vec::with_capacity(k),
        node_count: n,
        target: None,
    };
    for label in rank.iter().take(k) {
        let v = g.require(label.as_str())?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("node `{label}` appears twice in rank")));
        }
        tracker.add(g, v);
        result.push(label.clone(), tracker.count);
    }
    Ok(result)
}

/// Shortest prefix of `rank` whose coverage reaches `target`.
pub fn rank_select_to_target(
    g: &DirectedGraph,
    method: Method,
    rank: &Rank,
    target: f64,
) -> Result<SelectionResult> {
    check_target(target)?;
    let full = centrality_rank_select(g, method, rank, rank.len().min(g.node_count()).max(1))?;
    let k = full
        .covered
        .iter()
        .position(|&c| reaches(c, g.node_count(), target))
        .map_or(full.len(), |i| i + 1);
    let mut result = full.truncated(k);
    result.target = Some(target);
    Ok(result)
}

impl SelectionResult {
    fn push(&mut self, node: NodeId, covered: usize) {
        self.picks.push(node);
        self.covered.push(covered);
        self.cumulative.push(covered as f64 / self.node_count as f64);
    }
}

/// Incremental covered-set bookkeeping over node indices.
struct Tracker {
    covered: Vec<bool>,
    count: usize,
}

impl Tracker {
    fn new(g: &DirectedGraph) -> Self {
        Tracker {
            covered: vec![false; g.node_count()],
            count: 0,
        }
    }

    fn marginal(&self, g: &DirectedGraph, v: usize) -> usize {
        usize::from(!self.covered[v]) + g.in_adj(v).iter().filter(|&&u| !self.covered[u]).count()
    }

    fn add(&mut self, g: &DirectedGraph, v: usize) {
        for u in std::iter::once(v).chain(g.in_adj(v).iter().copied()) {
            if !std::mem::replace(&mut self.covered[u], true) {
                self.count += 1;
            }
        }
    }

    fn fraction(&self) -> f64 {
        match self.covered.len() {
            0 => 0.0,
            n => self.count as f64 / n as f64,
        }
    }
}
