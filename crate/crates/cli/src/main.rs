//! `leafspan`: check hypotheses, solve, enumerate, validate, and generate.
//!
//! Exit status: 0 on success (hypotheses hold, tree found, sweep clean),
//! 2 when hypotheses fail, the instance is refuted, or a sweep records
//! violations, and 1 on usage or input errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "leafspan",
    version,
    about = "Spanning trees with at most four leaves in K1,5-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report connectivity, induced K1,5, and sigma_5.
    Check(GraphArgs),
    /// Find a spanning tree with at most four leaves, or a certificate.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write accepted moves as JSON lines.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Exact minimum leaf count by spanning-tree enumeration.
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        /// Maximum number of complete spanning trees to visit.
        #[arg(long, default_value_t = leafspan::oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Cross-check the solver on every small graph or on random instances.
    Validate(ValidateArgs),
    /// Print a generated graph in graph6.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "graph6", "family"])))]
pub struct GraphArgs {
    /// Edge-list or graph6 file.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long, value_name = "STR")]
    pub graph6: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Generator: `sharpness` (needs --m) or `random` (needs --n).
    #[arg(long, value_name = "NAME")]
    pub family: Option<Family>,
    /// Block size of the sharpness family.
    #[arg(long)]
    pub m: Option<usize>,
    /// Order of a random instance.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
pub struct ValidateArgs {
    /// Sweep every labeled graph on N vertices (N <= 8).
    #[arg(long, value_name = "N")]
    pub exhaustive: Option<usize>,
    /// Sweep random theorem instances on N vertices.
    #[arg(long, value_name = "N", requires = "samples")]
    pub random: Option<usize>,
    #[arg(long, value_name = "K")]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Sharpness,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    /// One JSON object per line.
    Records,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check(graph) => commands::check(&graph),
        Command::Solve { graph, trace } => commands::solve(&graph, trace.as_deref()),
        Command::Oracle { graph, budget } => commands::oracle(&graph, budget),
        Command::Validate(args) => commands::validate(&args),
        Command::Gen { family, format } => commands::generate(&family, format),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(commands::Status::InputError as u8)
        }
    }
}
