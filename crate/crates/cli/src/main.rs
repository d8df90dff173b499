//! `dimerlab`: characteristic polynomials, Mahler measures, dimer and
//! spanning-tree counts for biperiodic planar graphs.

mod commands;
mod failure;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::CliError;

#[derive(Debug, Parser)]
#[command(name = "dimerlab", version, about = "Dimer models and determinant densities of biperiodic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A graph given either positionally or with `--graph`.
#[derive(Debug, Args)]
pub struct GraphSource {
    /// Graph file, or builtin:weave / builtin:triaxial
    #[arg(value_name = "GRAPH")]
    positional: Option<String>,

    #[arg(long = "graph", value_name = "GRAPH")]
    flag: Option<String>,
}

impl GraphSource {
    fn get(&self) -> Result<Option<&str>, CliError> {
        match (&self.positional, &self.flag) {
            (Some(_), Some(_)) => Err(CliError::Config("give the graph once, either positionally or with --graph".into())),
            (Some(g), None) | (None, Some(g)) => Ok(Some(g)),
            (None, None) => Ok(None),
        }
    }

    pub fn require(&self) -> Result<&str, CliError> {
        self.get()?.ok_or_else(|| CliError::Config("a graph is required".into()))
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Characteristic polynomial p(z,w) of the overlay graph
    Charpoly {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Mahler measure of a polynomial or of a graph's p(z,w)
    Mahler {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_name = "POLY")]
        poly: Option<String>,
        #[arg(long, default_value_t = dimerlab::mahler::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Spanning-tree densities of the patches H_n
    Density {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        n: Vec<usize>,
        #[arg(long, default_value_t = dimerlab::treecount::DEFAULT_EXACT_CAP)]
        exact_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dimer counts Z(G_n) of the toroidal quotients
    Dimers {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        n: Vec<usize>,
        /// Count by exhaustive enumeration instead
        #[arg(long)]
        brute: bool,
        /// Vertices per color allowed in enumeration
        #[arg(long, default_value_t = dimerlab::oracle::DEFAULT_DIMER_CAP)]
        enum_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Spanning trees of patches or of a finite graph file
    Treecount {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Finite graph: {"num_vertices": k, "edges": [[u, v], ...]}
        #[arg(long, value_name = "FILE")]
        patch: Option<String>,
        #[arg(long, default_value_t = dimerlab::treecount::DEFAULT_EXACT_CAP)]
        exact_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suite on a graph
    Check {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = dimerlab::mahler::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("DIMERLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Config(format!("DIMERLAB_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn positive_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Config(format!("--tol must be positive, got {tol}")))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Charpoly { graph, common } => commands::charpoly(graph.require()?, common.format.unwrap_or(Format::Text)),
        Command::Mahler { graph, poly, tol, common } => {
            let source = match (graph.get()?, poly) {
                (Some(g), None) => commands::MahlerInput::Graph(g.to_string()),
                (None, Some(p)) => commands::MahlerInput::Poly(p),
                _ => return Err(CliError::Config("give exactly one of a graph or --poly".into())),
            };
            commands::mahler(source, positive_tol(tol)?, common.format.unwrap_or(Format::Text))
        }
        Command::Density { graph, n, exact_cap, common } => {
            commands::density(graph.require()?, &n, exact_cap, common.format.unwrap_or(Format::Csv))
        }
        Command::Dimers { graph, n, brute, enum_cap, common } => {
            commands::dimers(graph.require()?, &n, brute, enum_cap, common.format.unwrap_or(Format::Text))
        }
        Command::Treecount { graph, n, patch, exact_cap, common } => {
            let input = match (graph.get()?, patch) {
                (Some(g), None) if !n.is_empty() => commands::TreeInput::Patches(g.to_string(), n),
                (None, Some(file)) if n.is_empty() => commands::TreeInput::File(file),
                _ => return Err(CliError::Config("give a graph with --n, or --patch alone".into())),
            };
            commands::treecount(input, exact_cap, common.format.unwrap_or(Format::Text))
        }
        Command::Check { graph, seed, tol, common } => {
            commands::check(graph.require()?, seed, positive_tol(tol)?, common.format.unwrap_or(Format::Text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed(out)) => {
            print!("{out}");
            let err = CliError::CheckFailed(String::new());
            eprintln!("{}", err.record());
            ExitCode::from(err.exit_code())
        }
        Err(err) => {
            eprintln!("{}", err.record());
            ExitCode::from(err.exit_code())
        }
    }
}
