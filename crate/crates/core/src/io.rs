//! Edge-list ingestion and serialization.
//!
//! CSV input has one `source,target` pair per row, an optional `source,...`
//! header and an optional third column that is ignored. JSON input is
//! `{"edges": [[s, t], ...], "nodes": [...]}` where `nodes` is optional and
//! may list isolated nodes. Serializers emit nodes and edges in sorted order
//! so the output is byte-stable.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphBuilder, IngestReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::invalid(format!("unknown graph format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// A parsed graph together with the count of dropped edges.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: DirectedGraph,
    pub report: IngestReport,
}

pub fn parse_edge_list(text: &str, format: Format) -> Result<Parsed> {
    let builder = match format {
        Format::Csv => parse_csv(text)?,
        Format::Json => parse_json(text)?,
    };
    let (graph, report) = builder.build();
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(Parsed { graph, report })
}

fn parse_csv(text: &str) -> Result<GraphBuilder> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut builder = GraphBuilder::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if i == 0 && record.get(0).is_some_and(|f| f.eq_ignore_ascii_case("source")) {
            continue;
        }
        if !(2..=3).contains(&record.len()) {
            return Err(Error::Parse {
                line,
                message: format!("expected `source,target`, found {} field(s)", record.len()),
            });
        }
        let (source, target) = (&record[0], &record[1]);
        if source.is_empty() || target.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty node label".to_string(),
            });
        }
        builder.add_edge(source, target)?;
    }
    Ok(builder)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    #[serde(default)]
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

fn parse_json(text: &str) -> Result<GraphBuilder> {
    if text.trim().is_empty() {
        return Err(Error::EmptyGraph);
    }
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    let mut builder = GraphBuilder::new();
    for label in doc.nodes {
        builder.add_node(label).map_err(|_| Error::Parse {
            line: 0,
            message: "empty node label in `nodes`".to_string(),
        })?;
    }
    for (i, (s, t)) in doc.edges.into_iter().enumerate() {
        builder.add_edge(s, t).map_err(|_| Error::Parse {
            line: 0,
            message: format!("empty node label in edge #{i}"),
        })?;
    }
    Ok(builder)
}

/// CSV with a `source,target` header. Isolated nodes cannot be expressed in
/// this format and are omitted.
pub fn to_csv(g: &DirectedGraph) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(["source", "target"]).expect("in-memory write");
    for (s, t) in g.edge_labels() {
        writer.write_record([s.as_str(), t.as_str()]).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("labels are UTF-8")
}

/// JSON document with every node listed, one edge per line.
pub fn to_json(g: &DirectedGraph) -> String {
    let quote = |s: &str| serde_json::to_string(s).expect("string serializes");
    let nodes: Vec<String> = g.nodes().iter().map(|n| quote(n.as_str())).collect();
    let mut out = String::from("{\n  \"nodes\": [");
    out.push_str(&nodes.join(", "));
    out.push_str("],\n  \"edges\": [");
    let edges: Vec<String> = g
        .edge_labels()
        .map(|(s, t)| format!("\n    [{}, {}]", quote(s.as_str()), quote(t.as_str())))
        .collect();
    out.push_str(&edges.join(","));
    if !edges.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

pub fn serialize(g: &DirectedGraph, format: Format) -> String {
    match format {
        Format::Csv => to_csv(g),
        Format::Json => to_json(g),
    }
}
