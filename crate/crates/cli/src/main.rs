//! `dbaug`: DTW-based time series augmentation from the command line.

mod commands;
mod failure;
mod files;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use failure::{exit, Failure};

#[derive(Debug, Parser)]
#[command(
    name = "dbaug",
    version,
    about = "Weighted DBA time series augmentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Append synthetic series to a training set.
    Augment(AugmentArgs),
    /// DTW distance (and optionally the warping path) between two series.
    Dtw(DtwArgs),
    /// Uniform DBA average of selected series.
    Dba(DbaArgs),
    /// 1-NN DTW accuracy of one or two training sets on a test set.
    Eval(EvalArgs),
    /// Average two posterior files and predict the argmax class.
    Ensemble(EnsembleArgs),
}

/// Options shared by commands that average series.
#[derive(Debug, Args)]
struct DbaOpts {
    /// Maximum DBA refinement iterations.
    #[arg(long, default_value_t = 10)]
    dba_iters: usize,
    /// Stop when the relative objective decrease falls below this.
    #[arg(long, default_value_t = 1e-8)]
    dba_tol: f64,
}

#[derive(Debug, Args)]
struct AugmentArgs {
    /// Training set (UCR label-first format).
    #[arg(long, required_unless_present = "manifest")]
    train: Option<PathBuf>,
    /// Output path for the augmented dataset.
    #[arg(long, required_unless_present = "manifest")]
    out: Option<PathBuf>,
    /// Sidecar metadata path [default: <out>.meta.json].
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Replay a previous run from its sidecar or manifest; --out may override
    /// the destination.
    #[arg(long, conflicts_with_all = ["train", "k", "boosted", "seed_weight",
        "boosted_weight", "residual_mass", "multiplier", "delimiter", "window", "dba_iters",
        "dba_tol"])]
    manifest: Option<PathBuf>,
    #[arg(long, env = "DBAUG_SEED", default_value_t = 0)]
    seed: u64,
    /// Nearest neighbours considered around each seed.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Neighbours drawn at random to receive the boosted weight.
    #[arg(long, default_value_t = 2)]
    boosted: usize,
    #[arg(long, default_value_t = 0.5)]
    seed_weight: f64,
    #[arg(long, default_value_t = 0.15)]
    boosted_weight: f64,
    /// Weight shared by the remaining neighbours.
    #[arg(long, default_value_t = 0.2)]
    residual_mass: f64,
    /// Every class is raised to this multiple of the largest class.
    #[arg(long, default_value_t = 2)]
    multiplier: usize,
    /// Input delimiter: tab, comma or a single character [default: auto].
    #[arg(long, value_parser = parse_delimiter)]
    delimiter: Option<char>,
    /// Sakoe-Chiba radius for every DTW computation [default: unconstrained].
    #[arg(long)]
    window: Option<usize>,
    #[command(flatten)]
    dba: DbaOpts,
}

#[derive(Debug, Args)]
struct DtwArgs {
    /// File holding the first series as bare values.
    #[arg(long, requires = "b", conflicts_with = "train")]
    a: Option<PathBuf>,
    /// File holding the second series as bare values.
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    /// Dataset to take both series from (with --pair).
    #[arg(long, requires = "pair")]
    train: Option<PathBuf>,
    /// Zero-based instance indices `I,J` into --train.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<(usize, usize)>,
    /// Also print the warping path, one `i,j` step per line.
    #[arg(long)]
    path: bool,
    #[arg(long, value_parser = parse_delimiter)]
    delimiter: Option<char>,
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Debug, Args)]
struct DbaArgs {
    #[arg(long)]
    train: PathBuf,
    /// Average every instance of this class.
    #[arg(long, conflicts_with = "indices")]
    class: Option<String>,
    /// Average these zero-based instance indices (comma separated).
    #[arg(long, value_delimiter = ',')]
    indices: Vec<usize>,
    /// Instance index used as the initial average [default: first selected].
    #[arg(long)]
    init: Option<usize>,
    /// Write the average here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_delimiter)]
    delimiter: Option<char>,
    #[arg(long)]
    window: Option<usize>,
    #[command(flatten)]
    dba: DbaOpts,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    test: PathBuf,
    /// Augmented training set to compare against --train.
    #[arg(long)]
    augmented: Option<PathBuf>,
    #[arg(long, value_parser = parse_delimiter)]
    delimiter: Option<char>,
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    /// First posterior file (header of class labels, then probability rows).
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// True labels, taken from the first field of each nonempty line.
    #[arg(long)]
    truth: Option<PathBuf>,
}

fn parse_delimiter(s: &str) -> Result<char, String> {
    match s {
        "tab" | "\\t" | "\t" => Ok('\t'),
        "comma" => Ok(','),
        "space" => Ok(' '),
        _ => {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c != '\n' && c != '\r' && c != '.' && c != '-' => Ok(c),
                _ => Err(format!("`{s}` is not a usable delimiter")),
            }
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or("expected I,J")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(i)?, parse(j)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Augment(args) => commands::augment(args),
        Command::Dtw(args) => commands::dtw(args),
        Command::Dba(args) => commands::dba(args),
        Command::Eval(args) => commands::eval(args),
        Command::Ensemble(args) => commands::ensemble(args),
    };
    match result {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(Failure { code, message }) => {
            eprintln!("dbaug: {message}");
            ExitCode::from(code as u8)
        }
    }
}
