use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphtempo::export::Format;
use graphtempo::{AggMode, Event, Extremal, GraphError, SetOp, Strategy};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "graphtempo", version, about = "Temporal attributed graph analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a graph, validate it and print a summary or the whole graph.
    Ingest {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write the graph back out as CSV files into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply a temporal operator and print the resulting graph.
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Attribute aggregation over an interval or an operator result.
    Aggregate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        agg: AggArgs,
        #[command(flatten)]
        time: TimeArgs,
        /// Aggregate the result of this operator over --t1 and --t2.
        #[arg(long)]
        op: Option<SetOp>,
        /// Use the static-attribute fast path.
        #[arg(long)]
        static_fast: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Triangle listing, or triangle aggregation when --attrs is given.
    Tri {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_delimiter = ',')]
        attrs: Vec<String>,
        #[arg(long, default_value = "dist")]
        mode: AggMode,
        #[command(flatten)]
        time: TimeArgs,
        #[arg(long)]
        op: Option<SetOp>,
        /// tri-first or op-first; defaults to op-first for intersection.
        #[arg(long)]
        strategy: Option<Strategy>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evolution between --t1 (old) and --t2 (new).
    Evolve {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        agg: AggArgs,
        #[command(flatten)]
        time: TimeArgs,
        /// Aggregate triangles instead of nodes and edges.
        #[arg(long)]
        pattern: Option<graphtempo::Pattern>,
        /// Print the labelled overlay of the base graph instead of aggregates.
        #[arg(long)]
        overlay: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find interval pairs where the target's event weight reaches k. With
    /// --out csv, prints the reference by extension length weight grid.
    Explore {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        k: u64,
        /// Evaluate every pair instead of searching.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Initial k from the weights of consecutive point pairs.
    InitK {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per time point aggregate cache.
    Cache {
        #[command(subcommand)]
        cmd: CacheCommand,
    },
    /// Timing harnesses on seeded synthetic graphs; prints CSV.
    Bench {
        #[command(subcommand)]
        cmd: BenchCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    Project {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    Union(BinaryOp),
    Intersection(BinaryOp),
    Difference(BinaryOp),
}

#[derive(Args, Debug)]
struct BinaryOp {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    time: TimeArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Store the ALL aggregate of every time point under the cache directory.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        attrs: Vec<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Union ALL aggregate over --t1 and --t2 summed from cached points.
    Rollup {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        attrs: Vec<String>,
        /// Roll the result up to these attributes.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
        #[command(flatten)]
        time: TimeArgs,
        #[arg(long)]
        dir: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Direct union ALL aggregation against the cached rollup.
    Rollup(BenchArgs),
    /// Triangle aggregation on an intersection, both strategies.
    Pattern(BenchArgs),
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 10_000)]
    edges: usize,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Use the built-in five-author example graph.
    #[arg(long, conflicts_with_all = ["edges", "static_file", "varying", "presence"])]
    fixture: bool,
    /// Edge file with source,target,time columns.
    #[arg(long, required_unless_present = "fixture")]
    edges: Option<PathBuf>,
    /// Static attributes: id column plus one column per attribute.
    #[arg(long = "static")]
    static_file: Option<PathBuf>,
    /// Time-varying attribute as NAME=PATH; repeatable.
    #[arg(long)]
    varying: Vec<String>,
    /// Node presence matrix: id column plus one 0/1 column per time label.
    #[arg(long)]
    presence: Option<PathBuf>,
    #[arg(long)]
    directed: bool,
}

#[derive(Args, Debug, Clone)]
struct TimeArgs {
    /// Label range such as t0..t2, a single label, or a comma separated list.
    #[arg(long)]
    interval: Option<String>,
    #[arg(long)]
    t1: Option<String>,
    #[arg(long)]
    t2: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct AggArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    attrs: Vec<String>,
    #[arg(long, default_value = "dist")]
    mode: AggMode,
}

#[derive(Args, Debug, Clone)]
struct QueryArgs {
    #[arg(long)]
    event: Event,
    #[arg(long)]
    extremal: Extremal,
    /// Extended side: old (new side fixed) or new (old side fixed). Also
    /// accepts old-fixed and new-fixed.
    #[arg(long, value_parser = commands::parse_reference)]
    reference: graphtempo::Reference,
    #[arg(long, value_delimiter = ',', required = true)]
    attrs: Vec<String>,
    #[arg(long, default_value = "dist")]
    mode: AggMode,
    #[arg(long, group = "target")]
    target_node: Option<String>,
    #[arg(long, group = "target")]
    target_edge: Option<String>,
    #[arg(long, group = "target")]
    target_pattern: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long = "out", default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("graphtempo: {e}");
            match e {
                GraphError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
