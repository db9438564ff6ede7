use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tauideal",
    version,
    about = "Test ideals, F-pure thresholds and F-jumping numbers of ideals over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Ring such as `F7[x,y]`.
    #[arg(long, global = true, value_name = "F<p>[VARS]")]
    pub ring: Option<String>,
    /// Comma-separated generators such as `x^2, y^3`.
    #[arg(long, global = true, value_name = "GENERATORS")]
    pub ideal: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Result cache directory; overrides TAUIDEAL_CACHE_DIR.
    #[arg(long, global = true, env = "TAUIDEAL_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Echoed in the report; all computations are deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct ChainArgs {
    /// Consecutive chain equalities required when the bounds do not meet.
    #[arg(long = "K", default_value_t = 2)]
    pub k: u32,
    /// Compatibility depth.
    #[arg(long = "B", default_value_t = 3)]
    pub b: u32,
    /// Largest Frobenius exponent tried.
    #[arg(long = "e-max", default_value_t = 12)]
    pub e_max: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test ideal at an exponent t.
    Tau {
        #[arg(long)]
        t: String,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// F-pure threshold bracket at the origin.
    Fpt {
        /// Frobenius depth; defaults to 6 for p <= 3 and 4 otherwise.
        #[arg(long)]
        depth: Option<u32>,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// F-jumping numbers on (0, T].
    Jumps {
        #[arg(long = "T", value_name = "T")]
        t_end: String,
        /// Grid depth; defaults to 6 for p <= 3 and 4 otherwise.
        #[arg(long)]
        depth: Option<u32>,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Compares tau at m + s with the ideal times tau at m - 1 + s.
    Skoda {
        /// Defaults to the number of generators.
        #[arg(long)]
        m: Option<u64>,
        /// Fractional offset s, default 0.
        #[arg(long)]
        t_base: Option<String>,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Chain value next to the lattice-point formula for a monomial ideal.
    OracleCompare {
        #[arg(long)]
        t: String,
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Test ideal of a monomial ideal through the toric blowup.
    BlowupPath {
        #[arg(long)]
        t: String,
        /// Defaults to (n+1)*ceil(t).
        #[arg(long)]
        slack: Option<u64>,
        /// A single Frobenius exponent instead of the stabilized image.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long = "K", default_value_t = 2)]
        k: u32,
        #[arg(long = "e-max", default_value_t = 16)]
        e_max: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tau { .. } => "tau",
            Command::Fpt { .. } => "fpt",
            Command::Jumps { .. } => "jumps",
            Command::Skoda { .. } => "skoda",
            Command::OracleCompare { .. } => "oracle-compare",
            Command::BlowupPath { .. } => "blowup-path",
        }
    }
}
