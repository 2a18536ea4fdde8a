use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "skolemgen", version, about = "Generate, count and verify Skolem sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print |OS_n| for n = 1..=K, one line per level.
    CountOpen(CountOpenArgs),
    /// Emit every Skolem sequence of one order.
    Enumerate(EnumerateArgs),
    /// Check Skolem sequences, one per line.
    Verify(VerifyArgs),
    /// Build a Steiner triple system of order 6n+1 from a Skolem sequence.
    Sts(StsArgs),
    /// Draw a decorated sequence as an arc diagram.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct WorkerArgs {
    /// Worker threads [env: SKOLEMGEN_WORKERS, default 1]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CountOpenArgs {
    #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..=63))]
    pub max_n: u64,
    /// Give up after visiting this many nodes (exit 3).
    #[arg(long)]
    pub node_budget: Option<u64>,
    #[command(flatten)]
    pub workers: WorkerArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceFormat {
    Text,
    Ndjson,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
    pub order: u64,
    /// Skip subtrees that cannot reach a Skolem sequence (default).
    #[arg(long, overrides_with = "no_prune")]
    pub prune: bool,
    /// Walk the full generating tree.
    #[arg(long, overrides_with = "prune")]
    pub no_prune: bool,
    #[arg(long, value_enum, default_value_t = SequenceFormat::Text)]
    pub format: SequenceFormat,
    /// Write records here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Progress lines on standard error every 10^7 nodes.
    #[arg(long)]
    pub progress: bool,
    #[command(flatten)]
    pub workers: WorkerArgs,
}

impl EnumerateArgs {
    pub fn prune(&self) -> bool {
        !self.no_prune
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Read from this file instead of standard input.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["sequence", "order"]))]
pub struct StsArgs {
    #[arg(long)]
    pub sequence: Option<String>,
    /// Use the i-th sequence (1-based) of this order in canonical order.
    #[arg(long, requires = "index", value_parser = clap::value_parser!(u64).range(1..=31))]
    pub order: Option<u64>,
    #[arg(long, requires = "order", value_parser = clap::value_parser!(u64).range(1..))]
    pub index: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub x: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub sequence: String,
    #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
    pub format: DiagramFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
