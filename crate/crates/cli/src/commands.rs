use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use blocksum::analysis::{compare_decades, AnalysisError, DecadeSpec};
use blocksum::generator::{generate_chunks, RangeRequest, Strategy};
use blocksum::oeis::{self, CrossCheck, Fetcher, OeisError, OfflineFetcher, SequenceId};
use blocksum::{eval_s, surjectivity_witness, Numeral, Width};

use crate::{OutputFormat, StrategyArg};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_ZERO_VARIANCE: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

/// Largest decade `analyze` will generate.
const MAX_ANALYZE_DECADE: u32 = 6;
const MAX_PLOT_X: u64 = 10_000_000;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError { code: EXIT_USAGE, message: message.to_string() }
    }

    fn io(context: &str, err: io::Error) -> Self {
        CliError { code: EXIT_IO, message: format!("{context}: {err}") }
    }
}

type CmdResult = Result<(), CliError>;

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(&path.display().to_string(), e))?;
            Box::new(BufWriter::with_capacity(1 << 20, file))
        }
        None => Box::new(BufWriter::with_capacity(1 << 20, io::stdout().lock())),
    })
}

fn output_name(out: Option<&Path>) -> String {
    out.map_or_else(|| "standard output".to_string(), |p| p.display().to_string())
}

pub fn eval(number: &str, width: Width) -> CmdResult {
    let t: Numeral = number
        .parse()
        .map_err(|e| CliError::usage(format!("invalid numeral {number:?}: {e}")))?;
    println!("{}", eval_s(&t, width));
    Ok(())
}

pub struct GenArgs {
    pub width: Width,
    pub start: u64,
    pub end: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub jobs: NonZeroUsize,
    pub chunk_size: u64,
    pub strategy: StrategyArg,
}

pub fn gen(args: GenArgs) -> CmdResult {
    if !matches!(args.format, OutputFormat::Csv | OutputFormat::Bfile) {
        return Err(CliError::usage("gen writes csv or bfile output"));
    }
    let req = RangeRequest::new(args.width, args.start, args.end)
        .and_then(|r| r.with_chunk_size(args.chunk_size))
        .map_err(CliError::usage)?;
    let strategy = match args.strategy {
        StrategyArg::Naive => Strategy::Naive,
        StrategyArg::Incremental => Strategy::Incremental,
    };
    let out_path = args.out.as_deref();
    let mut out = open_output(out_path)?;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        let csv = args.format == OutputFormat::Csv;
        if csv {
            out.write_all(b"n,s\n")?;
        }
        let sep = if csv { ',' } else { ' ' };
        for chunk in generate_chunks(&req, strategy, args.jobs) {
            for (n, s) in chunk.terms() {
                writeln!(out, "{n}{sep}{s}")?;
            }
        }
        out.flush()
    };
    write(&mut out).map_err(|e| CliError::io(&output_name(out_path), e))
}

pub fn witness(width: Width, target: u64) -> CmdResult {
    let Some(i) = width.as_finite() else {
        return Err(CliError::usage("witness needs a finite width"));
    };
    let t = surjectivity_witness(width, target).map_err(CliError::usage)?;
    let check = eval_s(&t, width);
    println!("{t} (S_{i} = {check})");
    Ok(())
}

fn analysis_error(err: AnalysisError) -> CliError {
    match err {
        AnalysisError::ZeroVariance => CliError { code: EXIT_ZERO_VARIANCE, message: err.to_string() },
        other => CliError::usage(other),
    }
}

pub fn analyze(
    width: Width,
    decade_a: u32,
    decade_b: u32,
    bins: usize,
    format: OutputFormat,
    out: Option<PathBuf>,
    jobs: NonZeroUsize,
) -> CmdResult {
    if !matches!(format, OutputFormat::Text | OutputFormat::Csv) {
        return Err(CliError::usage("analyze writes text or csv output"));
    }
    if decade_a.max(decade_b) > MAX_ANALYZE_DECADE {
        return Err(CliError::usage(format!("decades must be at most {MAX_ANALYZE_DECADE}")));
    }
    let spec_a = DecadeSpec::new(width, decade_a, bins).map_err(analysis_error)?;
    let spec_b = DecadeSpec::new(width, decade_b, bins).map_err(analysis_error)?;
    let start = spec_a.first().min(spec_b.first());
    let end = spec_a.last().max(spec_b.last());
    let req = RangeRequest::new(width, start, end).map_err(CliError::usage)?;
    let series = generate_chunks(&req, Strategy::Incremental, jobs).terms();
    let report = compare_decades(&spec_a, &spec_b, series).map_err(analysis_error)?;

    let body = match format {
        OutputFormat::Csv => report.to_csv(),
        _ => report.to_text(),
    };
    let mut writer = open_output(out.as_deref())?;
    writer
        .write_all(body.as_bytes())
        .and_then(|()| writer.flush())
        .map_err(|e| CliError::io(&output_name(out.as_deref()), e))
}

pub fn plot(width: Width, max_x: u64, out: &Path, jobs: NonZeroUsize) -> CmdResult {
    if max_x == 0 || max_x > MAX_PLOT_X {
        return Err(CliError::usage(format!("max-x must be in 1..={MAX_PLOT_X}")));
    }
    let req = RangeRequest::new(width, 1, max_x).map_err(CliError::usage)?;
    let terms = generate_chunks(&req, Strategy::Incremental, jobs).terms();
    let title = format!("S_{width}(x), x = 1..{max_x}");
    let mut writer = open_output(Some(out))?;
    blocksum::plot::render_scatter(terms, max_x, &title, &mut writer)
        .and_then(|()| writer.flush())
        .map_err(|e| CliError::io(&out.display().to_string(), e))
}

fn fetcher(offline: bool) -> Box<dyn Fetcher> {
    #[cfg(feature = "http")]
    if !offline {
        return Box::new(oeis::HttpFetcher);
    }
    let _ = offline;
    Box::new(OfflineFetcher)
}

pub fn oeis_check(
    id: &str,
    width: Width,
    count: u64,
    cache_dir: Option<PathBuf>,
    offline: bool,
) -> CmdResult {
    let id: SequenceId = id.parse().map_err(CliError::usage)?;
    let cache_dir = cache_dir.unwrap_or_else(oeis::default_cache_dir);
    let fetcher = fetcher(offline);
    match oeis::cross_check(id, width, count, &cache_dir, fetcher.as_ref()) {
        Ok(CrossCheck::Clean) => {
            println!("CLEAN: S_{width} matches {id} for n = 1..{count}");
            Ok(())
        }
        Ok(CrossCheck::Mismatch { index, computed, expected }) => {
            println!("mismatch at n={index}: S_{width}({index}) = {computed}, {id}({index}) = {expected}");
            Err(CliError { code: EXIT_MISMATCH, message: format!("S_{width} differs from {id}") })
        }
        Err(err @ (OeisError::NetworkUnavailable { .. } | OeisError::Io { .. })) => {
            Err(CliError { code: EXIT_IO, message: err.to_string() })
        }
        Err(err) => Err(CliError::usage(err)),
    }
}

pub fn bench(width: Width, count: u64) -> CmdResult {
    let req = RangeRequest::new(width, 1, count.max(1)).map_err(CliError::usage)?;
    let report = blocksum::bench::compare_strategies(&req);
    println!("terms: {}", report.terms);
    println!("naive: {:.3} s", report.naive.as_secs_f64());
    println!("incremental: {:.3} s", report.incremental.as_secs_f64());
    println!("speedup: {:.2}x", report.speedup());
    println!("agree: {}", report.agree());
    Ok(())
}
