mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use demuskin::catalog::Level;

use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "demuskin",
    version,
    about = "Splittings, Dehn twists and p-quotient certificates for Demuskin-type one-relator groups"
)]
struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for sampled output.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value = "1")]
    pub r: Level,
    /// Integer or `inf`; defaults to `inf`.
    #[arg(long)]
    pub rprime: Option<Level>,
    /// Parameters or a split descriptor as inline JSON or a file path;
    /// overrides the individual flags.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Hnn,
    HnnDef,
    Amalg,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Amalg)]
    pub kind: KindArg,
    /// Amalgam index `1 ≤ n < d`.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Use the paired splitting β instead of α.
    #[arg(long)]
    pub beta: bool,
}

#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    #[arg(long)]
    pub word: Option<String>,
    /// Comma-separated generator labels; defaults to the group's.
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// The one-relator presentation.
    Present {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// A catalog splitting with its Tietze dictionary.
    Split {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Check a splitting presents the group.
    Validate {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        /// A splitting JSON file to check instead of a catalog entry.
        #[arg(long)]
        splitting: Option<PathBuf>,
    },
    /// The k-th power of the Dehn twist along a splitting.
    Twist {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Also report the image of this word.
        #[arg(long)]
        word: Option<String>,
    },
    /// Free reduction, cyclic core and primitive root of a word.
    Reduce {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Bass-Serre normal form and translation length.
    Tlength {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        word: String,
    },
    /// Intersection verdict for two splittings of one group.
    Intersect {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        /// Second splitting; without it the first is compared with its β.
        #[arg(long, value_enum)]
        with_kind: Option<KindArg>,
        #[arg(long, default_value_t = 1)]
        with_n: usize,
    },
    /// Finite p-quotient certificate that a twist power is outer.
    CertifyOuter {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Re-verify an existing certificate file instead of searching.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Whitehead minimality of a word (the relator by default).
    Whitehead {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        word: WordArgs,
        /// Also sample this many relator-stabilizing automorphisms.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Nielsen separation of relators across levels.
    Separate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_delimiter = ',', default_values = ["1", "2", "3"])]
        rprimes: Vec<Level>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 5, 7])]
        primes: Vec<u64>,
    },
    /// The p-torsion Heisenberg or cyclic quotient for a splitting.
    Quotient {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// A finite slice of the curve complex.
    CurveComplex {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 3)]
        rprime_max: u32,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    use commands as c;
    let out = match cli.verb {
        Verb::Present { group } => c::present(&group, cli.format)?,
        Verb::Split { group, split } => c::split(&group, &split, cli.format)?,
        Verb::Validate {
            group,
            split,
            splitting,
        } => c::validate(&group, &split, splitting.as_deref(), cli.format)?,
        Verb::Twist { group, split, k, word } => c::twist(&group, &split, k, word.as_deref(), cli.format)?,
        Verb::Reduce { group, word } => c::reduce(&group, &word, cli.format)?,
        Verb::Tlength { group, split, word } => c::tlength(&group, &split, &word, cli.format)?,
        Verb::Intersect {
            group,
            split,
            with_kind,
            with_n,
        } => c::intersect(&group, &split, with_kind.map(|k| (k, with_n)), cli.format)?,
        Verb::CertifyOuter {
            group,
            split,
            k,
            verify,
        } => c::certify_outer(&group, &split, k, verify.as_deref(), cli.format)?,
        Verb::Whitehead { group, word, samples } => c::whitehead(&group, &word, samples, cli.seed, cli.format)?,
        Verb::Separate { group, rprimes, primes } => c::separate(&group, &rprimes, &primes, cli.format)?,
        Verb::Quotient { group, split, s } => c::quotient(&group, &split, s, cli.format)?,
        Verb::CurveComplex { group, rprime_max } => c::curve_complex(&group, rprime_max, cli.format)?,
    };
    match cli.out {
        Some(path) => std::fs::write(&path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(CliError::Schema(String::new()).exit_code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code())
        }
    }
}
