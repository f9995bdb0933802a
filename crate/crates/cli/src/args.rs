use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "skolem",
    version,
    about = "Decide, count and construct Skolem-type sequences"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for counting and sweeps (0 = every core).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parity, density and extremality checks for a difference multiset.
    Check {
        /// Differences, e.g. `1 3 3` or `1,3,3`.
        #[arg(required = true, num_args = 1..)]
        diffs: Vec<String>,
        /// Positions; defaults to `1..2n`.
        #[arg(long)]
        positions: Option<String>,
    },
    /// Find a pairing of arbitrary positions into the given differences.
    Decide {
        /// Positions, e.g. `1,2,4,5` or `1-8`.
        #[arg(long)]
        positions: String,
        #[arg(long)]
        diffs: String,
        /// List every pairing in lexicographic order instead of one.
        #[arg(long)]
        all: bool,
        /// Stop after this many pairings (with `--all`).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Find a perfect sequence for a difference multiset.
    Perfect {
        #[arg(required = true, num_args = 1..)]
        diffs: Vec<String>,
    },
    /// Find an extremal perfect sequence (the differences must sum to n²).
    Extremal {
        #[arg(required = true, num_args = 1..)]
        diffs: Vec<String>,
    },
    /// Exact count of one family at one order.
    Count {
        #[arg(long)]
        family: String,
        #[arg(long)]
        order: usize,
    },
    /// Counts of one family for every order up to `--max`.
    Tables {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max: usize,
    },
    /// Check a conjectured characterisation exhaustively.
    Verify {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[arg(long)]
        max: usize,
    },
    /// Build an extremal sequence by one of the constructions.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        /// Base differences (from-skolem, from-k-extended).
        #[arg(long)]
        diffs: Option<String>,
        /// Hook position (from-k-extended).
        #[arg(long)]
        hook: Option<u32>,
        /// Witness for the base set, as a sequence or pairing JSON; searched
        /// for when absent.
        #[arg(long)]
        witness: Option<String>,
        /// Left extremal set (compose-*).
        #[arg(long)]
        left: Option<String>,
        /// Right extremal set (compose-*).
        #[arg(long)]
        right: Option<String>,
        /// The `a` of `{a..3a} \ {2a}` (near-langford).
        #[arg(long)]
        defect: Option<u32>,
        /// `n` of `{1..n} \ {m}` (near-skolem).
        #[arg(long)]
        order: Option<u32>,
        /// `m` of `{1..n} \ {m}` (near-skolem).
        #[arg(long)]
        missing: Option<u32>,
    },
    /// Realise or count permutations with a displacement pattern.
    Displacement {
        /// Pattern such as `(4,1,0,-2,-3)`.
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Count realisations instead of finding one.
        #[arg(long)]
        count: bool,
    },
    /// Check a sequence or pairing against positions and differences.
    Validate {
        /// Sequence text (`5 6 2 3 2 5 3 6`) or pairing JSON.
        #[arg(long)]
        witness: String,
        /// Defaults to the positions the witness occupies.
        #[arg(long)]
        positions: Option<String>,
        /// Defaults to the differences the witness realises.
        #[arg(long)]
        diffs: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    #[value(name = "2")]
    Sets,
    TwoMissing,
    Extremal,
    Mod4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    FromSkolem,
    FromKExtended,
    ComposeC,
    ComposeD,
    ComposeE,
    NearLangford,
    NearSkolem,
}
