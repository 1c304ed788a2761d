//! Text renderings of every command's result.
//!
//! Markdown shows whole percentages in one-column-per-method tables. CSV and
//! JSON carry full `f64` precision in a fixed column and key order.

use std::fmt::Write;

use clap::ValueEnum;
use netcover::coverage::{Method, SelectionResult};
use netcover::evaluation::{CoverageTable, ParetoPoint, RankCorrelationMatrix};
use netcover::graph::GraphStats;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

fn percent(x: f64) -> String {
    format!("{}%", (x * 100.0).round())
}

fn heading(method: Method) -> &'static str {
    match method {
        Method::InDegree => "in-degree rank",
        Method::Betweenness => "betweenness rank",
        Method::Closeness => "closeness rank",
        Method::Eigenvector => "eigenvector rank",
        Method::Greedy => "greedy",
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
    out.push_str(&line(header));
    out.push_str(&line(&vec!["---".to_string(); header.len()]));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

pub fn stats(s: &GraphStats, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => format!(
            "n={} m={} density={:.1}% avg_degree={:.2}\n",
            s.n,
            s.m,
            s.density * 100.0,
            s.avg_degree
        ),
        OutputFormat::Csv => format!("n,m,density,avg_degree\n{},{},{},{}\n", s.n, s.m, s.density, s.avg_degree),
        OutputFormat::Json => to_json(&json!({
            "n": s.n,
            "m": s.m,
            "density": s.density,
            "avg_degree": s.avg_degree,
        })),
    }
}

pub fn selection(s: &SelectionResult, format: OutputFormat) -> String {
    let rows = s.picks.iter().zip(&s.covered).zip(&s.cumulative).enumerate();
    match format {
        OutputFormat::Markdown => {
            let header = ["#", "node", "covered", "coverage"].map(String::from);
            let body: Vec<Vec<String>> = rows
                .map(|(i, ((node, covered), frac))| {
                    vec![(i + 1).to_string(), node.to_string(), covered.to_string(), percent(*frac)]
                })
                .collect();
            let mut out = format!("{} selection on {} nodes\n\n", s.method, s.node_count);
            out.push_str(&markdown_table(&header, &body));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("rank,node,covered,coverage\n");
            for (i, ((node, covered), frac)) in rows {
                writeln!(out, "{},{},{},{}", i + 1, csv_field(node.as_str()), covered, frac).unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let picks: Vec<Value> = rows
                .map(|(i, ((node, covered), frac))| {
                    json!({ "rank": i + 1, "node": node, "covered": covered, "coverage": frac })
                })
                .collect();
            to_json(&json!({
                "method": s.method.name(),
                "n": s.node_count,
                "target": s.target,
                "picks": picks,
            }))
        }
    }
}

pub fn coverage_table(t: &CoverageTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => {
            let mut header = vec!["Number of nodes selected".to_string()];
            header.extend(t.methods.iter().map(|&m| heading(m).to_string()));
            let body: Vec<Vec<String>> = t
                .ks
                .iter()
                .zip(&t.cells)
                .map(|(k, row)| std::iter::once(k.to_string()).chain(row.iter().map(|&c| percent(c))).collect())
                .collect();
            markdown_table(&header, &body)
        }
        OutputFormat::Csv => {
            let mut out = String::from("k");
            for m in &t.methods {
                write!(out, ",{}", m.name()).unwrap();
            }
            out.push('\n');
            for (k, row) in t.ks.iter().zip(&t.cells) {
                out.push_str(&k.to_string());
                for c in row {
                    write!(out, ",{c}").unwrap();
                }
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let columns: serde_json::Map<String, Value> = t
                .methods
                .iter()
                .enumerate()
                .map(|(j, m)| (m.name().to_string(), t.cells.iter().map(|row| row[j]).collect()))
                .collect();
            to_json(&json!({ "n": t.node_count, "ks": t.ks, "coverage": columns }))
        }
    }
}

pub fn correlation(c: &RankCorrelationMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => {
            let mut header = vec![String::new()];
            header.extend(c.entries.iter().map(|(m, _)| heading(*m).trim_end_matches(" rank").to_string()));
            let mut row = vec!["greedy coverage rank".to_string()];
            row.extend(
                c.entries
                    .iter()
                    .map(|(_, r)| r.map_or_else(|| "n/a".to_string(), |r| format!("{r:.3}"))),
            );
            markdown_table(&header, &[row])
        }
        OutputFormat::Csv => {
            let mut out = String::from("method,rho\n");
            for (m, r) in &c.entries {
                writeln!(out, "{},{}", m.name(), r.map(|r| r.to_string()).unwrap_or_default()).unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> =
                c.entries.iter().map(|(m, r)| (m.name().to_string(), json!(r))).collect();
            to_json(&Value::Object(map))
        }
    }
}

pub fn pareto(points: &[ParetoPoint], n: usize, threshold: f64, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => {
            let header = ["method", "k", "k/n", "coverage"].map(String::from);
            let body: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    vec![
                        p.method.to_string(),
                        p.k.to_string(),
                        format!("{:.1}%", p.node_fraction * 100.0),
                        percent(p.coverage),
                    ]
                })
                .collect();
            let mut out = format!("smallest selection covering {} of {n} nodes\n\n", percent(threshold));
            out.push_str(&markdown_table(&header, &body));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("method,k,node_fraction,coverage\n");
            for p in points {
                writeln!(out, "{},{},{},{}", p.method.name(), p.k, p.node_fraction, p.coverage).unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "method": p.method.name(),
                        "k": p.k,
                        "node_fraction": p.node_fraction,
                        "coverage": p.coverage,
                    })
                })
                .collect();
            to_json(&json!({ "n": n, "threshold": threshold, "points": rows }))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
