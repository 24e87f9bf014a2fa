use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hunt_core::analytics::DEFAULT_SEED;
use hunt_core::knowledge::KnowledgeKind;
use hunt_core::strategies::StrategySpec;
use serde::Serialize;

/// Deterministic treasure hunt on port-numbered trees.
#[derive(Debug, Parser, Serialize)]
#[command(name = "hunt", version)]
pub struct Cli {
    /// Master seed for generators, port assignments and sampling.
    #[arg(long, global = true, env = "HUNT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Move budget per run (default: 8·n²).
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    /// Largest labeling family enumerated exhaustively.
    #[arg(long, global = true, default_value_t = hunt_core::tree::DEFAULT_RELABEL_CAP)]
    pub relabel_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Generate a tree and print it as JSON.
    Generate(TreeArgs),
    /// Run one strategy and report the cost of every level.
    Run(RunArgs),
    /// Worst-case overhead over the labelings the knowledge cannot separate.
    Overhead(OverheadArgs),
    /// Analytic lower bounds per level.
    Bounds(BoundsArgs),
    /// Penalty witness experiments.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Claim suites over a corpus.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Star,
    StarPendant,
    Caterpillar,
    FullBinary,
    Path,
    Broom,
    EvenRandom,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ports {
    /// Children on ports 0..c, parent edge on port c.
    Sorted,
    /// Uniform port permutation per node, from the master seed.
    Seeded,
}

#[derive(Debug, Args, Serialize)]
pub struct TreeArgs {
    /// Tree file in the JSON tree format.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub tree: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub branching: Option<usize>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Ports::Seeded)]
    pub ports: Ports,
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub strategy: StrategySpec,
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub kind: KnowledgeKind,
    /// Distance told to the agent (distance kinds only).
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct OverheadArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub strategy: StrategySpec,
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub kind: KnowledgeKind,
    /// Radius.
    #[arg(long)]
    pub m: usize,
    /// Fixed distance for distance kinds; omitted means every d <= m.
    #[arg(long)]
    pub d: Option<usize>,
    /// Labelings drawn when the family exceeds the relabeling cap.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Emit O(1)..O(m) instead of O(m) alone.
    #[arg(long)]
    pub curve: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Radius; defaults to the depth.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCommand {
    /// Star with a pendant: blind dfs:2 against the complete-map optimum.
    Star {
        #[arg(long)]
        n: usize,
    },
    /// Caterpillar: blind distance-unaware search against the spine walk.
    Caterpillar {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// Doubling against incremental deepening on a full binary tree.
    Doubling {
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyCommand {
    /// Sweep-schedule cost bounds for every instance of a corpus.
    Lemma2 {
        #[arg(long, value_enum, default_value_t = Corpus::Default)]
        corpus: Corpus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corpus {
    Default,
    Random,
    Even,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleCommand {
    /// Shortest walk from the root visiting every node of one level.
    Cover {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        level: usize,
    },
    /// Root-preserving isomorphism test ignoring ports.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
