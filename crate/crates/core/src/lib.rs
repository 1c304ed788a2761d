//! Coverage-driven selection of "change agent" nodes in directed networks.
//!
//! A node covers itself and every node that points at it. Selecting a small
//! set of nodes whose combined coverage spans most of the network is a
//! maximum-coverage problem; [`coverage::greedy_select`] solves it greedily
//! with an in-degree bounded lazy scan. The [`centrality`] module provides the
//! classic baselines (degree, betweenness, closeness, eigenvector), and
//! [`evaluation`] compares them against the greedy selection on coverage,
//! rank correlation and the 80/20 point.
//!
//! Node labels are opaque strings ordered bytewise. That order is the single
//! tie-break used by every ranking and selection, so all outputs are
//! reproducible run to run.

pub mod centrality;
pub mod coverage;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod io;
pub mod synth;

pub use centrality::{CentralityScores, DegreeMode, Measure, Rank};
pub use coverage::{CoverageSet, Method, SelectionResult};
pub use error::{Error, Result};
pub use evaluation::{CoverageTable, ParetoPoint, RankCorrelationMatrix};
pub use graph::{DirectedGraph, GraphBuilder, GraphStats, IngestReport, NodeId};
pub use io::Format;
pub use synth::{Model, SynthConfig};
