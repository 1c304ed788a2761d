//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ... PASS|FAIL` line to stderr (uncaptured) with its timing.

mod common;

use std::io::Write as _;
use std::time::{Duration, Instant};

use netcover::centrality::{self, Measure};
use netcover::coverage::{greedy_select, set_coverage, Method};
use netcover::evaluation::{
    coverage_table, method_rank, pareto_point, rank_correlation_report, spearman, spearman_ranks,
};
use netcover::graph::graph_stats;
use netcover::synth::{gen_erdos_renyi, gen_preferential};
use netcover::{DirectedGraph, NodeId, Rank};
use netcover_oracle::{brute_force_max_coverage, definitional_centrality, naive_greedy, OracleError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PA_SEEDS: std::ops::Range<u64> = 0..20;
const PA_N: usize = 215;
const PA_EPN: usize = 10;

/// Prints the verdict line, then fails the test on a FAIL verdict.
fn verdict(id: u32, title: &str, started: Instant, budget: Option<Duration>, outcome: Result<String, String>) {
    let elapsed = started.elapsed();
    let over_budget = budget.filter(|&b| elapsed > b);
    let (status, detail) = match (&outcome, over_budget) {
        (Ok(d), None) => ("PASS", d.clone()),
        (Ok(d), Some(b)) => ("FAIL", format!("{d}; runtime exceeds {:.0?}", b)),
        (Err(d), _) => ("FAIL", d.clone()),
    };
    let line = format!("criterion {id} [{title}]: {status} ({detail}) in {:.2}s", elapsed.as_secs_f64());
    writeln!(std::io::stderr(), "{line}").unwrap();
    assert_eq!(status, "PASS", "{line}");
}

fn info(line: &str) {
    writeln!(std::io::stderr(), "    {line}").unwrap();
}

fn mixed_graph(seed: u64, max_n: usize) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    if seed % 2 == 0 {
        gen_erdos_renyi(n, rng.gen_range(0.0..0.3), seed).unwrap()
    } else {
        gen_preferential(n, rng.gen_range(1..=4), seed).unwrap()
    }
}

fn graph(edges: &[(&str, &str)]) -> DirectedGraph {
    DirectedGraph::from_edges(edges.iter().copied()).unwrap()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

#[test]
fn criterion_1_graph_statistics() {
    let started = Instant::now();
    let outcome = (|| {
        // 215 nodes, 2225 edges: node i points at the next 10 or 11 nodes.
        let n = 215;
        let mut edges = Vec::new();
        for i in 0..n {
            let fan = if i < 75 { 11 } else { 10 };
            for d in 1..=fan {
                edges.push((format!("{i:03}"), format!("{:03}", (i + d) % n)));
            }
        }
        let g = DirectedGraph::from_edges(edges).unwrap();
        if (g.node_count(), g.edge_count()) != (215, 2225) {
            return Err(format!("fixture has n={} m={}", g.node_count(), g.edge_count()));
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, netcover::io::to_csv(&g)).unwrap();
        let out = common::netcover(&["stats", &path.to_string_lossy()]);
        let line = common::stdout(&out);
        if line != "n=215 m=2225 density=4.8% avg_degree=20.70\n" {
            return Err(format!("rendered {line:?}"));
        }

        for seed in 0..100 {
            let g = mixed_graph(7000 + seed, 60);
            let n = g.node_count();
            let mut m = 0usize;
            for u in 0..n {
                for v in 0..n {
                    m += usize::from(g.has_edge(u, v));
                }
            }
            let density = m as f64 / (n as f64 * (n as f64 - 1.0));
            let avg_degree = (0..n).map(|v| g.in_degree(v) + g.out_degree(v)).sum::<usize>() as f64 / n as f64;
            let s = graph_stats(&g);
            if s.m != m || (s.density - density).abs() > 1e-12 || (s.avg_degree - avg_degree).abs() > 1e-12 {
                return Err(format!("seed {seed}: {s:?} vs m={m} density={density} avg_degree={avg_degree}"));
            }
        }
        Ok(format!("rendered {:?}; 100 graphs agree to 1e-12", line.trim_end()))
    })();
    verdict(1, "graph statistics", started, Some(Duration::from_secs(1)), outcome);
}

#[test]
fn criterion_2_lazy_greedy_equals_naive() {
    let started = Instant::now();
    let mut mismatches = Vec::new();
    let mut runs = 0;
    for seed in 0..200 {
        let g = mixed_graph(seed, 60);
        for target in [0.25, 0.5, 0.8, 1.0] {
            let lazy = greedy_select(&g, target).unwrap();
            let naive = naive_greedy(&g, target).unwrap();
            runs += 1;
            if lazy.picks != naive.picks || lazy.cumulative != naive.cumulative {
                mismatches.push((seed, target));
            }
        }
    }
    let outcome = if mismatches.is_empty() {
        Ok(format!("{runs} runs on 200 graphs, 0 mismatches"))
    } else {
        Err(format!("{} mismatches, first {:?}", mismatches.len(), mismatches[0]))
    };
    verdict(2, "lazy greedy equals naive greedy", started, Some(Duration::from_secs(30)), outcome);
}

#[test]
fn criterion_3_approximation_guarantee() {
    let started = Instant::now();
    let bound = 1.0 - (-1.0f64).exp();
    let mut violations = Vec::new();
    let mut pairs = 0;
    let mut worst = f64::INFINITY;
    for seed in 0..50 {
        let g = mixed_graph(1000 + seed, 14);
        let greedy = greedy_select(&g, 1.0).unwrap();
        for k in 1..=4.min(g.node_count()) {
            let (_, optimum) = brute_force_max_coverage(&g, k).unwrap();
            let got = greedy.coverage_at(k);
            pairs += 1;
            worst = worst.min(got / optimum);
            if got < bound * optimum || got > optimum {
                violations.push((seed, k, got, optimum));
            }
        }
    }
    let outcome = if violations.is_empty() {
        Ok(format!("{pairs} (graph, k) pairs, worst greedy/optimum ratio {worst:.4}"))
    } else {
        Err(format!("{} violations, first {:?}", violations.len(), violations[0]))
    };
    verdict(3, "greedy within (1 - 1/e) of optimum", started, Some(Duration::from_secs(60)), outcome);
}

fn compare(g: &DirectedGraph, measure: Measure) -> Result<f64, String> {
    let fast = centrality::centrality(g, measure);
    let slow = definitional_centrality(g, measure);
    match (fast, slow) {
        (Ok(a), Ok(b)) => Ok(a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)),
        (Err(netcover::Error::EigenvectorUndefined), Err(OracleError::EigenvectorUndefined)) => Ok(0.0),
        (a, b) => Err(format!("{measure}: fast {:?} vs oracle {:?}", a.err(), b.err())),
    }
}

fn closed_form_failures() -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |case: &str, g: &DirectedGraph, measure: Measure, expected: &[(&str, f64)]| {
        let fast = centrality::centrality(g, measure).unwrap();
        let slow = definitional_centrality(g, measure).unwrap();
        for &(label, want) in expected {
            for (who, got) in [("fast", fast.get(label)), ("oracle", slow.get(label))] {
                if got.is_none_or(|v| (v - want).abs() > 1e-9) {
                    failures.push(format!("{case} {measure} {who} {label}: {got:?} != {want}"));
                }
            }
        }
    };

    let path = graph(&[("a", "b"), ("b", "c"), ("c", "d")]);
    check("path", &path, Measure::Betweenness, &[("a", 0.0), ("b", 2.0), ("c", 2.0), ("d", 0.0)]);
    check("path", &path, Measure::Closeness, &[("a", 0.5), ("b", 4.0 / 9.0), ("c", 1.0 / 3.0), ("d", 0.0)]);
    let norm = 3f64.sqrt();
    check("path", &path, Measure::Eigenvector, &[("a", 0.0), ("b", 1.0 / norm), ("c", 1.0 / norm)]);

    let star = graph(&[("l1", "hub"), ("l2", "hub"), ("l3", "hub"), ("l4", "hub")]);
    check("star", &star, Measure::Betweenness, &[("hub", 0.0), ("l1", 0.0)]);
    check("star", &star, Measure::Closeness, &[("hub", 0.0), ("l1", 0.25), ("l4", 0.25)]);
    check("star", &star, Measure::Eigenvector, &[("hub", 1.0), ("l2", 0.0)]);

    for n in [4usize, 7] {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let cycle = DirectedGraph::from_edges((0..n).map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))).unwrap();
        let all = |v: f64| labels.iter().map(|l| (l.as_str(), v)).collect::<Vec<_>>();
        let nf = n as f64;
        check("cycle", &cycle, Measure::Betweenness, &all((nf - 1.0) * (nf - 2.0) / 2.0));
        check("cycle", &cycle, Measure::Closeness, &all(2.0 / nf));
        check("cycle", &cycle, Measure::Eigenvector, &all(1.0 / nf.sqrt()));
    }

    let bipath = graph(&[("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")]);
    check("bidirectional path", &bipath, Measure::Eigenvector, &[("a", 0.5), ("b", 0.5 * 2f64.sqrt()), ("c", 0.5)]);
    failures
}

#[test]
fn criterion_4_centrality_oracles() {
    let started = Instant::now();
    let outcome = (|| {
        let mut worst = [0.0f64; 3];
        let measures = [Measure::Betweenness, Measure::Closeness, Measure::Eigenvector];
        for seed in 0..100 {
            let g = mixed_graph(2000 + seed, 30);
            for (slot, &measure) in measures.iter().enumerate() {
                let diff = compare(&g, measure).map_err(|e| format!("seed {seed}: {e}"))?;
                if diff > 1e-9 {
                    return Err(format!("seed {seed}: {measure} differs by {diff:e}"));
                }
                worst[slot] = worst[slot].max(diff);
            }
        }
        let failures = closed_form_failures();
        if !failures.is_empty() {
            return Err(failures.join("; "));
        }
        Ok(format!(
            "100 graphs, max diff betweenness {:.1e} closeness {:.1e} eigenvector {:.1e}; path/star/cycle closed forms hold",
            worst[0], worst[1], worst[2]
        ))
    })();
    verdict(4, "centrality oracle equivalence", started, Some(Duration::from_secs(60)), outcome);
}

/// Column means of `f` over 20 Erdős–Rényi graphs matching the ensemble's
/// size and density. Informational only.
fn er_ensemble(f: impl Fn(&DirectedGraph) -> Vec<f64>) -> Vec<f64> {
    let rows: Vec<Vec<f64>> = PA_SEEDS.map(|seed| f(&gen_erdos_renyi(PA_N, 0.0484, seed).unwrap())).collect();
    (0..rows[0].len()).map(|j| mean(&rows.iter().map(|r| r[j]).collect::<Vec<_>>())).collect()
}

fn named(methods: &[Method], values: &[f64]) -> String {
    methods.iter().zip(values).map(|(m, v)| format!("{m}={v:.4}")).collect::<Vec<_>>().join(" ")
}

#[test]
fn criterion_5_greedy_column_leads_at_k50() {
    let started = Instant::now();
    let mut leads = 0;
    let mut sums = [0.0f64; 5];
    let mut methods = Vec::new();
    for seed in PA_SEEDS {
        let g = gen_preferential(PA_N, PA_EPN, seed).unwrap();
        let table = coverage_table(&g, &[50]).unwrap();
        methods = table.methods.clone();
        let row = &table.cells[0];
        let greedy = table.cell(50, Method::Greedy).unwrap();
        if row.iter().all(|&c| greedy >= c) {
            leads += 1;
        }
        for (s, c) in sums.iter_mut().zip(row) {
            *s += c;
        }
    }
    let seeds = PA_SEEDS.count() as f64;
    let means: Vec<(Method, f64)> = methods.iter().copied().zip(sums.iter().map(|s| s / seeds)).collect();
    let greedy_mean = means.iter().find(|(m, _)| *m == Method::Greedy).unwrap().1;
    let ties: Vec<String> = means
        .iter()
        .filter(|(m, v)| *m != Method::Greedy && *v >= greedy_mean)
        .map(|(m, _)| m.to_string())
        .collect();
    let summary = means.iter().map(|(m, v)| format!("{m}={:.4}", v)).collect::<Vec<_>>().join(" ");
    let er_means = er_ensemble(|g| coverage_table(g, &[50]).unwrap().cells[0].clone());
    info(&format!(
        "for comparison, Erdos-Renyi ensemble (n=215, p=0.0484) mean coverage at k=50: {}",
        named(&methods, &er_means)
    ));
    let outcome = if leads < 18 {
        Err(format!("greedy >= all columns in {leads}/20 seeds; means {summary}"))
    } else if !ties.is_empty() {
        Err(format!(
            "greedy >= all columns in {leads}/20 seeds but not strictly maximal on average (matched by {}); means {summary}",
            ties.join(", ")
        ))
    } else {
        Ok(format!("greedy >= all columns in {leads}/20 seeds and strictly maximal on average; means {summary}"))
    };
    verdict(5, "coverage table ordering on preferential-attachment ensemble", started, Some(Duration::from_secs(120)), outcome);
}

#[test]
fn criterion_6_in_degree_correlates_best() {
    let started = Instant::now();
    let mut sums = [0.0f64; 4];
    let mut undefined = 0;
    for seed in PA_SEEDS {
        let g = gen_preferential(PA_N, PA_EPN, seed).unwrap();
        let report = rank_correlation_report(&g).unwrap();
        for (slot, &method) in Method::CENTRALITY.iter().enumerate() {
            match report.get(method) {
                Some(rho) => sums[slot] += rho,
                None => undefined += 1,
            }
        }
    }
    let seeds = PA_SEEDS.count() as f64;
    let means: Vec<(Method, f64)> = Method::CENTRALITY.iter().copied().zip(sums.iter().map(|s| s / seeds)).collect();
    let er_means = er_ensemble(|g| {
        let report = rank_correlation_report(g).unwrap();
        Method::CENTRALITY.iter().map(|&m| report.get(m).unwrap_or(f64::NAN)).collect()
    });
    info(&format!(
        "for comparison, Erdos-Renyi ensemble (n=215, p=0.0484) mean rho: {}",
        named(&Method::CENTRALITY, &er_means)
    ));
    let in_degree = means[0].1;
    let rivals: Vec<String> = means[1..]
        .iter()
        .filter(|(_, v)| *v >= in_degree)
        .map(|(m, v)| format!("{m}={v:.4}"))
        .collect();
    let summary = means.iter().map(|(m, v)| format!("{m}={v:.4}")).collect::<Vec<_>>().join(" ");
    let outcome = if undefined > 0 {
        Err(format!("{undefined} undefined correlations; means {summary}"))
    } else if rivals.is_empty() {
        Ok(format!("mean rho {summary}"))
    } else {
        Err(format!("in_degree mean rho not strictly highest (matched by {}); means {summary}", rivals.join(", ")))
    };
    verdict(6, "in-degree has the highest mean rank correlation", started, Some(Duration::from_secs(120)), outcome);
}

/// Pearson correlation of tie-averaged ranks, ranks found by counting.
fn pearson_on_counted_ranks(a: &[f64], b: &[f64]) -> Option<f64> {
    let ranks = |xs: &[f64]| -> Vec<f64> {
        xs.iter()
            .map(|&x| {
                let below = xs.iter().filter(|&&y| y < x).count() as f64;
                let equal = xs.iter().filter(|&&y| y == x).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    (va > 0.0 && vb > 0.0).then(|| cov / (va * vb).sqrt())
}

#[test]
fn criterion_7_spearman() {
    let started = Instant::now();
    let outcome = (|| {
        let up = [1.0, 2.0, 3.0, 4.0, 5.0];
        let down = [5.0, 4.0, 3.0, 2.0, 1.0];
        let checks = [
            ("identical", spearman(&up, &up).unwrap(), 1.0),
            ("reversed", spearman(&up, &down).unwrap(), -1.0),
            ("swapped pairs", spearman(&up, &[2.0, 1.0, 4.0, 3.0, 5.0]).unwrap(), 0.8),
        ];
        for (case, got, want) in checks {
            if got != want {
                return Err(format!("{case}: {got} != {want}"));
            }
        }
        let rank: Rank = Rank::new(["a", "b", "c", "d"].iter().map(|l| NodeId::new(*l).unwrap()).collect());
        let reversed = Rank::new(rank.iter().rev().cloned().collect());
        if spearman_ranks(&rank, &rank).unwrap() != 1.0 || spearman_ranks(&rank, &reversed).unwrap() != -1.0 {
            return Err("rank-order ±1 cases".into());
        }

        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut worst = 0.0f64;
        let mut undefined = 0;
        for i in 0..1000 {
            let n = rng.gen_range(2..=60);
            // Half the pairs draw from a small integer range, forcing ties.
            let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                if i % 2 == 0 {
                    (0..n).map(|_| rng.gen_range(0..6) as f64).collect()
                } else {
                    (0..n).map(|_| rng.gen::<f64>()).collect()
                }
            };
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            match (spearman(&a, &b), pearson_on_counted_ranks(&a, &b)) {
                (Ok(got), Some(want)) => worst = worst.max((got - want).abs()),
                (Err(netcover::Error::UndefinedCorrelation(_)), None) => undefined += 1,
                (got, want) => return Err(format!("pair {i}: {got:?} vs oracle {want:?}")),
            }
        }
        if worst > 1e-12 {
            return Err(format!("max deviation from oracle {worst:e}"));
        }
        Ok(format!("exact ±1 and 0.8 cases; 1000 random pairs, max deviation {worst:.1e}, {undefined} constant inputs agree as undefined"))
    })();
    verdict(7, "spearman correctness", started, Some(Duration::from_secs(10)), outcome);
}

/// Smallest k whose prefix of `order` covers `threshold`, by direct recomputation.
fn scan_minimal_k(g: &DirectedGraph, order: &[NodeId], threshold: f64) -> Option<usize> {
    (1..=order.len()).find(|&k| {
        let covered = set_coverage(g, order[..k].iter().map(NodeId::as_str)).unwrap().covered.len();
        covered as f64 / g.node_count() as f64 >= threshold
    })
}

#[test]
fn criterion_8_pareto_report() {
    let started = Instant::now();
    let outcome = (|| {
        for seed in 0..30 {
            let g = mixed_graph(8000 + seed, 50);
            for method in Method::ALL {
                let order: Vec<NodeId> = match method.measure() {
                    Some(measure) => method_rank(&g, measure).unwrap().into_vec(),
                    None => greedy_select(&g, 1.0).unwrap().picks,
                };
                let p = pareto_point(&g, method, 0.8).unwrap();
                let want = scan_minimal_k(&g, &order, 0.8);
                if Some(p.k) != want || p.node_fraction != p.k as f64 / g.node_count() as f64 {
                    return Err(format!("seed {seed} {method}: reported k={} scan {want:?}", p.k));
                }
            }
        }

        let mut fractions = vec![Vec::new(); Method::ALL.len()];
        for seed in PA_SEEDS {
            let g = gen_preferential(PA_N, PA_EPN, seed).unwrap();
            for (slot, method) in Method::ALL.into_iter().enumerate() {
                fractions[slot].push(pareto_point(&g, method, 0.8).unwrap().node_fraction);
            }
        }
        info("pareto 80% point, mean k/n over the preferential-attachment ensemble (n=215, epn=10, 20 seeds):");
        for (method, f) in Method::ALL.iter().zip(&fractions) {
            info(&format!("{method:<12} k/n = {:.2}%", 100.0 * mean(f)));
        }

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pa.json");
        let path = path.to_string_lossy();
        let gen = common::netcover(&["gen", "--model", "pa", "--n", "215", "--epn", "10", "--seed", "0", "--out", &path]);
        assert!(gen.status.success());
        let printed = common::stdout(&common::netcover(&["pareto", &path, "--format", "csv"]));
        let g = gen_preferential(PA_N, PA_EPN, 0).unwrap();
        for method in Method::ALL {
            let p = pareto_point(&g, method, 0.8).unwrap();
            let row = format!("{},{},{},", method.name(), p.k, p.node_fraction);
            if !printed.contains(&row) {
                return Err(format!("CLI output lacks {row:?}:\n{printed}"));
            }
        }
        Ok("reported k matches a direct scan for 5 methods on 30 graphs; CLI prints k and k/n".into())
    })();
    verdict(8, "pareto report", started, None, outcome);
}

#[test]
fn criterion_9_cli_determinism() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for (name, args) in common::GOLDEN_CASES {
        let first = common::run_case(args, &[]);
        let second = common::run_case(args, &[]);
        if first != second {
            problems.push(format!("{name}: two runs differ"));
        }
        if let Err(e) = common::check_golden(name, &first) {
            problems.push(e);
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = ["a.json", "b.json"].iter().map(|f| dir.path().join(f)).collect();
    for f in &files {
        let p = f.to_string_lossy();
        let out = common::netcover(&["gen", "--model", "pa", "--n", "215", "--epn", "10", "--seed", "7", "--out", &p]);
        assert!(out.status.success());
    }
    if std::fs::read(&files[0]).unwrap() != std::fs::read(&files[1]).unwrap() {
        problems.push("gen --out files differ".into());
    }

    let outcome = if problems.is_empty() {
        Ok(format!("{} commands byte-identical across runs and equal to golden files", common::GOLDEN_CASES.len() + 1))
    } else {
        Err(problems.join("; "))
    };
    verdict(9, "CLI determinism", started, None, outcome);
}
