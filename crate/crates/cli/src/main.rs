use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_lefschetz::experiment::DEFAULT_EXHAUSTIVE_CAP;
use graph_lefschetz::verify::VerifyOptions;
use graph_lefschetz_cli::commands;
use graph_lefschetz_cli::input::{load_graph, load_map, LoadedGraph};
use graph_lefschetz_cli::report::AnalysisReport;

/// Lefschetz numbers, curvature and zeta functions of graphs, in exact
/// arithmetic.
#[derive(Parser)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file; names like `petersen.g` or `k4.g` resolve to generated graphs
    graph: Option<String>,
    /// Generated graph `<name>[:<k>]`, e.g. `cycle:5`
    #[arg(long)]
    named: Option<String>,
}

impl GraphArgs {
    fn load(&self) -> Result<LoadedGraph, String> {
        load_graph(self.graph.as_deref(), self.named.as_deref())
    }
}

#[derive(Args)]
struct MapArgs {
    /// Vertex images, comma-separated: `1,2,3,0` means T(0)=1, T(1)=2, ...
    #[arg(long)]
    map: Option<String>,
    /// File with a single line `map <i0> <i1> ...`
    #[arg(long)]
    map_file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Clique complex, cohomology and, with a map, its Lefschetz number
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Automorphism group, Lefschetz spectrum and the averaging theorems
    Aut {
        #[command(flatten)]
        graph: GraphArgs,
        /// Print the Lefschetz curvature of every simplex
        #[arg(long)]
        curvature: bool,
        /// Print the quotient graph by the automorphism group
        #[arg(long)]
        orbigraph: bool,
    },
    /// Lefschetz zeta function of an automorphism (identity by default) or of the graph
    Zeta {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        map: MapArgs,
        /// Product over the whole automorphism group
        #[arg(long)]
        group: bool,
        /// Number of series coefficients to check (default: twice the map's order)
        #[arg(long)]
        series_order: Option<usize>,
    },
    /// Expected average Lefschetz number of a random graph
    Random {
        #[arg(long)]
        n: usize,
        /// Average over all 2^(n(n-1)/2) labeled graphs
        #[arg(long, conflicts_with_all = ["samples", "p", "seed"])]
        exhaustive: bool,
        /// Number of sampled graphs
        #[arg(long, required_unless_present = "exhaustive")]
        samples: Option<usize>,
        /// Edge probability, `a/b` or a decimal
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n accepted in exhaustive mode
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Run every invariant check on the built-in graph corpus
    VerifyCorpus {
        #[arg(long)]
        skip_zeta: bool,
        #[arg(long)]
        skip_averaging: bool,
    },
}

fn run(command: &Command) -> Result<AnalysisReport, String> {
    match command {
        Command::Analyze { graph, map } => {
            let loaded = graph.load()?;
            let t = load_map(&loaded.graph, map.map.as_deref(), map.map_file.as_deref())?;
            commands::analyze(&loaded, t.as_ref())
        }
        Command::Aut { graph, curvature, orbigraph } => commands::aut(&graph.load()?, *curvature, *orbigraph),
        Command::Zeta { graph, map, group, series_order } => {
            let loaded = graph.load()?;
            let t = load_map(&loaded.graph, map.map.as_deref(), map.map_file.as_deref())?;
            commands::zeta(&loaded, t.as_ref(), *group, *series_order)
        }
        Command::Random { n, exhaustive, samples, p, seed, cap } => match (exhaustive, samples) {
            (true, _) => commands::random_exhaustive(*n, *cap),
            (false, Some(k)) => commands::random_sampled(*n, *k, p, *seed),
            (false, None) => Err("give --exhaustive or --samples <k>".into()),
        },
        Command::VerifyCorpus { skip_zeta, skip_averaging } => commands::verify_corpus(&VerifyOptions {
            skip_zeta: *skip_zeta,
            skip_averaging: *skip_averaging,
        }),
    }
}

fn main() -> ExitCode {
    // clap's own exit code for usage errors is 2, which is reserved here for
    // failed checks
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => match serde_json::to_string_pretty(&report) {
            Ok(json) => println!("{json}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
