//! `blocksum` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid input, 3 I/O or network failure,
//! 4 zero-variance analysis, 5 OEIS mismatch.

mod commands;

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use blocksum::Width;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blocksum", version, about = "Digit-block sums S_i: evaluate, generate, analyze, plot")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Bfile,
    Svg,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    Incremental,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print S_w of a decimal numeral.
    Eval {
        number: String,
        /// Block width: a positive integer or "inf".
        #[arg(long, short)]
        width: Width,
    },
    /// Write S_w(n) for n in start..=end as CSV or an OEIS b-file.
    Gen {
        #[arg(long, short)]
        width: Width,
        #[arg(long, default_value_t = 1)]
        start: u64,
        #[arg(long)]
        end: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        jobs: NonZeroUsize,
        #[arg(long, default_value_t = blocksum::generator::DEFAULT_CHUNK_SIZE)]
        chunk_size: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Incremental)]
        strategy: StrategyArg,
    },
    /// Build a numeral t with S_i(t) equal to the target.
    Witness {
        #[arg(long, short)]
        width: Width,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        target: u64,
    },
    /// Correlate binned means of two decades of a sequence.
    Analyze {
        #[arg(long, short)]
        width: Width,
        #[arg(long)]
        decade_a: u32,
        #[arg(long)]
        decade_b: u32,
        #[arg(long, default_value_t = blocksum::analysis::DEFAULT_BINS)]
        bins: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        jobs: NonZeroUsize,
    },
    /// Scatter plot of S_w(x) for x = 1..=max_x as SVG.
    Plot {
        #[arg(long, short)]
        width: Width,
        #[arg(long)]
        max_x: u64,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value = "1")]
        jobs: NonZeroUsize,
    },
    /// Compare S_w(n), n = 1..=count, against an OEIS sequence.
    OeisCheck {
        /// Sequence id such as A057147.
        id: String,
        #[arg(long, short)]
        width: Width,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Cache directory; overrides $BLOCKSUM_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Never touch the network; fail on a cache miss.
        #[arg(long)]
        offline: bool,
    },
    /// Time naive against incremental generation of S_w(1..=count).
    Bench {
        #[arg(long, short, default_value = "1")]
        width: Width,
        #[arg(long, default_value_t = 10_000_000)]
        count: u64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { number, width } => commands::eval(&number, width),
        Command::Gen { width, start, end, format, out, jobs, chunk_size, strategy } => {
            commands::gen(commands::GenArgs { width, start, end, format, out, jobs, chunk_size, strategy })
        }
        Command::Witness { width, target } => commands::witness(width, target),
        Command::Analyze { width, decade_a, decade_b, bins, format, out, jobs } => {
            commands::analyze(width, decade_a, decade_b, bins, format, out, jobs)
        }
        Command::Plot { width, max_x, out, jobs } => commands::plot(width, max_x, &out, jobs),
        Command::OeisCheck { id, width, count, cache_dir, offline } => {
            commands::oeis_check(&id, width, count, cache_dir, offline)
        }
        Command::Bench { width, count } => commands::bench(width, count),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("blocksum: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
