//! `netcover`: coverage-driven change-agent selection on directed networks.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netcover::coverage::{self, Method};
use netcover::evaluation::{self, default_ks};
use netcover::graph::graph_stats;
use netcover::io::{parse_edge_list, serialize, Parsed};
use netcover::synth::{Model, SynthConfig};
use netcover::{DirectedGraph, Format};

mod render;

use render::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "netcover", version, about = "Select high-coverage change agents and compare them with centrality rankings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Node count, edge count, density and average degree.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
    /// Select nodes by greedy coverage or by a centrality rank.
    Select(SelectArgs),
    /// Coverage of every method at each selection size.
    Evaluate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated selection sizes, ascending [default: 1,2,3,4,5,10,20,30,40,50 clamped to n]
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
    /// Spearman correlation between the greedy order and each centrality.
    Correlate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
    /// Smallest selection reaching a coverage threshold, per method.
    Pareto {
        #[command(flatten)]
        input: Input,
        /// One method, or every method when omitted.
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
        #[arg(long, default_value_t = coverage::DEFAULT_TARGET)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
    /// Generate a seeded synthetic graph.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Edge list (`.json` or CSV); `-` reads standard input.
    graph: PathBuf,
    /// Override format detection from the file extension.
    #[arg(long, value_enum)]
    input_format: Option<GraphFormat>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("size").required(true).args(["target", "k"])))]
struct SelectArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_parser = parse_method, default_value = "greedy")]
    method: Method,
    /// Stop once this fraction of the network is covered.
    #[arg(long)]
    target: Option<f64>,
    /// Select exactly this many nodes.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long)]
    n: usize,
    /// Edge probability (Erdős–Rényi).
    #[arg(long)]
    p: Option<f64>,
    /// Edges emitted per new node (preferential attachment).
    #[arg(long)]
    epn: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the `--out` extension, else JSON.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelKind {
    #[value(alias = "erdos_renyi", alias = "erdos-renyi")]
    Er,
    #[value(alias = "preferential_attachment", alias = "preferential-attachment")]
    Pa,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Csv,
    Json,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::Csv => Format::Csv,
            GraphFormat::Json => Format::Json,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: netcover::Error| e.to_string())
}

#[derive(Debug)]
enum CliError {
    /// Bad input, bad arguments, IO failure: exit code 2.
    Usage(String),
    /// A computed result broke one of its own invariants: exit code 3.
    Internal(String),
}

impl From<netcover::Error> for CliError {
    fn from(e: netcover::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
    configure_threads();

    let cli = Cli::parse();
    let outcome = run(cli.command).and_then(|out| {
        let mut stdout = io::stdout().lock();
        stdout.write_all(out.as_bytes())?;
        stdout.flush()?;
        Ok(())
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var("NETCOVER_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring NETCOVER_THREADS={raw:?}: expected a positive integer"),
    }
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Stats { input, format } => {
            let g = load(&input)?;
            Ok(render::stats(&graph_stats(&g), format))
        }
        Command::Select(args) => {
            let g = load(&args.input)?;
            let selection = select(&g, &args)?;
            check_selection(&selection)?;
            Ok(render::selection(&selection, args.format))
        }
        Command::Evaluate { input, ks, format } => {
            let g = load(&input)?;
            let ks = ks.unwrap_or_else(|| default_ks(g.node_count()));
            let table = evaluation::coverage_table(&g, &ks)?;
            check_table(&table)?;
            Ok(render::coverage_table(&table, format))
        }
        Command::Correlate { input, format } => {
            let g = load(&input)?;
            let matrix = evaluation::rank_correlation_report(&g)?;
            if matrix.entries.iter().any(|(_, r)| r.is_some_and(|r| !(-1.0..=1.0).contains(&r))) {
                return Err(CliError::Internal("correlation outside [-1, 1]".into()));
            }
            Ok(render::correlation(&matrix, format))
        }
        Command::Pareto {
            input,
            method,
            threshold,
            format,
        } => {
            let g = load(&input)?;
            let methods = method.map_or_else(|| Method::ALL.to_vec(), |m| vec![m]);
            let points = methods
                .into_iter()
                .map(|m| evaluation::pareto_point(&g, m, threshold))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(p) = points.iter().find(|p| p.coverage < threshold) {
                return Err(CliError::Internal(format!("{} stopped below the threshold", p.method)));
            }
            Ok(render::pareto(&points, g.node_count(), threshold, format))
        }
        Command::Gen(args) => generate(args),
    }
}

fn load(input: &Input) -> CliResult<DirectedGraph> {
    let text = if input.graph.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(&input.graph)
            .map_err(|e| CliError::Usage(format!("{}: {e}", input.graph.display())))?
    };
    let format = input
        .input_format
        .map(Format::from)
        .unwrap_or_else(|| Format::from_path(&input.graph));
    let Parsed { graph, report } =
        parse_edge_list(&text, format).map_err(|e| CliError::Usage(format!("{}: {e}", input.graph.display())))?;
    if !report.is_clean() {
        log::warn!(
            "dropped {} duplicate edge(s) and {} self-loop(s)",
            report.duplicates,
            report.self_loops
        );
    }
    Ok(graph)
}

fn select(g: &DirectedGraph, args: &SelectArgs) -> CliResult<coverage::SelectionResult> {
    let rank = match args.method.measure() {
        Some(measure) => Some(evaluation::method_rank(g, measure)?),
        None => None,
    };
    Ok(match (rank, args.target, args.k) {
        (None, Some(target), _) => coverage::greedy_select(g, target)?,
        (None, None, Some(k)) => coverage::greedy_select_k(g, k)?,
        (Some(rank), Some(target), _) => coverage::rank_select_to_target(g, args.method, &rank, target)?,
        (Some(rank), None, Some(k)) => coverage::centrality_rank_select(g, args.method, &rank, k)?,
        (_, None, None) => unreachable!("clap requires --target or --k"),
    })
}

fn check_selection(s: &coverage::SelectionResult) -> CliResult<()> {
    let monotone = match s.method {
        Method::Greedy => s.cumulative.windows(2).all(|w| w[0] < w[1]),
        _ => s.cumulative.windows(2).all(|w| w[0] <= w[1]),
    };
    let mut picks: Vec<_> = s.picks.iter().collect();
    picks.sort();
    picks.dedup();
    if !monotone || picks.len() != s.picks.len() || s.cumulative.iter().any(|c| !(0.0..=1.0).contains(c)) {
        return Err(CliError::Internal(format!("{} selection violates its invariants", s.method)));
    }
    Ok(())
}

fn check_table(t: &evaluation::CoverageTable) -> CliResult<()> {
    for (col, method) in t.methods.iter().enumerate() {
        let column: Vec<f64> = t.cells.iter().map(|row| row[col]).collect();
        if column.windows(2).any(|w| w[0] > w[1]) || column.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(CliError::Internal(format!("{method} column is not a coverage curve")));
        }
    }
    Ok(())
}

fn generate(args: GenArgs) -> CliResult<String> {
    let model = match args.model {
        ModelKind::Er => Model::ErdosRenyi {
            p: args.p.ok_or_else(|| CliError::Usage("--model er requires --p".into()))?,
        },
        ModelKind::Pa => Model::PreferentialAttachment {
            edges_per_node: args
                .epn
                .ok_or_else(|| CliError::Usage("--model pa requires --epn".into()))?,
        },
    };
    let graph = SynthConfig {
        model,
        n: args.n,
        seed: args.seed,
    }
    .generate()?;

    let format = match (args.format, &args.out) {
        (Some(f), _) => f.into(),
        (None, Some(path)) if has_extension(path, "csv") => Format::Csv,
        _ => Format::Json,
    };
    let text = serialize(&graph, format);
    match args.out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case(ext))
}
