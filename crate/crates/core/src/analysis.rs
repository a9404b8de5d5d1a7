//! Quantitative self-similarity of a sequence across decades.
//!
//! A decade `d` covers the indices `10^d ..= 10^(d+1) - 1` (decade 0 is
//! `1..=9`). Its index axis is rescaled to `[0, 1)` and cut into `B` equal
//! bins; the per-bin means of two decades are then compared by Pearson
//! correlation. Bin means are exact rationals built from integer sums.

use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::block::Width;
use crate::generator::Term;

/// Highest decade whose upper bound still fits in a `u64`.
pub const MAX_DECADE: u32 = 18;

pub const DEFAULT_BINS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("decade {0} is out of range (at most {MAX_DECADE})")]
    DecadeOutOfRange(u32),
    #[error("bin count must be at least 2, got {0}")]
    TooFewBins(usize),
    #[error("decade {decade} has only {span} indices, fewer than {bins} bins")]
    TooManyBins { decade: u32, span: u64, bins: usize },
    #[error("series does not cover decade {decade}: index {missing} is missing")]
    IncompleteSeries { decade: u32, missing: u64 },
    #[error("decade specs differ in width or bin count")]
    MismatchedSpecs,
    #[error("a mean vector has zero variance")]
    ZeroVariance,
    #[error("vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("series is empty")]
    EmptySeries,
    #[error("sum of series values overflowed")]
    Overflow,
}

/// A decade of one sequence, cut into `bins` equal index bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecadeSpec {
    width: Width,
    decade: u32,
    bins: usize,
}

impl DecadeSpec {
    pub fn new(width: Width, decade: u32, bins: usize) -> Result<Self, AnalysisError> {
        if decade > MAX_DECADE {
            return Err(AnalysisError::DecadeOutOfRange(decade));
        }
        if bins < 2 {
            return Err(AnalysisError::TooFewBins(bins));
        }
        let spec = DecadeSpec { width, decade, bins };
        let span = spec.span();
        if bins as u64 > span {
            return Err(AnalysisError::TooManyBins { decade, span, bins });
        }
        Ok(spec)
    }

    pub fn width(&self) -> Width {
        self.width
    }

    pub fn decade(&self) -> u32 {
        self.decade
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// First index of the decade.
    pub fn first(&self) -> u64 {
        10u64.pow(self.decade)
    }

    /// Last index of the decade (inclusive).
    pub fn last(&self) -> u64 {
        self.first() * 10 - 1
    }

    pub fn span(&self) -> u64 {
        self.last() - self.first() + 1
    }

    pub fn normalization(&self) -> AxisNormalization {
        AxisNormalization { origin: self.first(), span: self.span() }
    }

    fn bin_of(&self, index: u64) -> usize {
        ((u128::from(index - self.first()) * self.bins as u128) / u128::from(self.span())) as usize
    }
}

/// The affine map `x -> (x - origin) / span` that sends a decade onto `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisNormalization {
    pub origin: u64,
    pub span: u64,
}

impl AxisNormalization {
    pub fn apply(&self, index: u64) -> f64 {
        (index - self.origin) as f64 / self.span as f64
    }
}

/// Accumulates one decade's bin sums from an ascending term stream.
#[derive(Debug, Clone)]
struct DecadeBinner {
    spec: DecadeSpec,
    sums: Vec<u128>,
    counts: Vec<u64>,
    expected: u64,
    error: Option<AnalysisError>,
}

impl DecadeBinner {
    fn new(spec: DecadeSpec) -> Self {
        DecadeBinner {
            spec,
            sums: vec![0; spec.bins],
            counts: vec![0; spec.bins],
            expected: spec.first(),
            error: None,
        }
    }

    fn push(&mut self, (index, value): Term) {
        if self.error.is_some() || index < self.spec.first() || index > self.spec.last() {
            return;
        }
        if index != self.expected {
            self.error = Some(AnalysisError::IncompleteSeries {
                decade: self.spec.decade,
                missing: self.expected,
            });
            return;
        }
        let bin = self.spec.bin_of(index);
        match self.sums[bin].checked_add(value) {
            Some(s) => self.sums[bin] = s,
            None => self.error = Some(AnalysisError::Overflow),
        }
        self.counts[bin] += 1;
        self.expected += 1;
    }

    fn finish(self) -> Result<Vec<Ratio<u128>>, AnalysisError> {
        if let Some(err) = self.error {
            return Err(err);
        }
        if self.expected <= self.spec.last() {
            return Err(AnalysisError::IncompleteSeries {
                decade: self.spec.decade,
                missing: self.expected,
            });
        }
        Ok(self
            .sums
            .into_iter()
            .zip(self.counts)
            .map(|(s, c)| Ratio::new(s, u128::from(c)))
            .collect())
    }
}

/// Per-bin means of the sequence values over one decade.
///
/// The series must be ascending and contain every index of the decade;
/// indices outside it are ignored.
pub fn bin_decade<I>(series: I, spec: &DecadeSpec) -> Result<Vec<Ratio<u128>>, AnalysisError>
where
    I: IntoIterator<Item = Term>,
{
    let mut binner = DecadeBinner::new(*spec);
    for term in series {
        binner.push(term);
    }
    binner.finish()
}

pub fn ratio_to_f64(r: &Ratio<u128>) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    (n / d) as f64 + (n % d) as f64 / *d as f64
}

/// Pearson correlation coefficient, clamped to `[-1, 1]`.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64, AnalysisError> {
    if a.len() != b.len() {
        return Err(AnalysisError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(AnalysisError::ZeroVariance);
    }
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let (cov, var_a, var_b) = a.iter().zip(b).fold((0.0, 0.0, 0.0), |(c, va, vb), (x, y)| {
        let (dx, dy) = (x - mean_a, y - mean_b);
        (c + dx * dy, va + dx * dx, vb + dy * dy)
    });
    if var_a == 0.0 || var_b == 0.0 {
        return Err(AnalysisError::ZeroVariance);
    }
    // sqrt(v * v) == v exactly, so identical inputs give exactly 1.
    Ok((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub width: Width,
    pub decade_a: u32,
    pub decade_b: u32,
    pub bins: usize,
    pub means_a: Vec<Ratio<u128>>,
    pub means_b: Vec<Ratio<u128>>,
    pub pearson_r: f64,
    pub normalization_a: AxisNormalization,
    pub normalization_b: AxisNormalization,
}

impl SimilarityReport {
    /// Left edge of each bin on the rescaled `[0, 1)` axis.
    pub fn bin_starts(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.bins).map(move |k| k as f64 / self.bins as f64)
    }

    /// Line-oriented `key: value` record.
    pub fn to_text(&self) -> String {
        let join = |means: &[Ratio<u128>]| {
            means.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        writeln!(out, "width: {}", self.width).unwrap();
        writeln!(out, "decade_a: {}", self.decade_a).unwrap();
        writeln!(out, "decade_b: {}", self.decade_b).unwrap();
        writeln!(out, "bins: {}", self.bins).unwrap();
        for (name, norm) in [("a", self.normalization_a), ("b", self.normalization_b)] {
            writeln!(out, "normalization_{name}: x' = (x - {}) / {}", norm.origin, norm.span).unwrap();
        }
        writeln!(out, "means_a: {}", join(&self.means_a)).unwrap();
        writeln!(out, "means_b: {}", join(&self.means_b)).unwrap();
        writeln!(out, "pearson_r: {:.12}", self.pearson_r).unwrap();
        out
    }

    /// CSV with `#` metadata lines followed by one row per bin.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# width={} decade_a={} decade_b={} bins={} pearson_r={:.12}",
            self.width, self.decade_a, self.decade_b, self.bins, self.pearson_r
        )
        .unwrap();
        out.push_str("bin,x,mean_a,mean_b\n");
        for (k, x) in self.bin_starts().enumerate() {
            writeln!(
                out,
                "{k},{x:.6},{:.6},{:.6}",
                ratio_to_f64(&self.means_a[k]),
                ratio_to_f64(&self.means_b[k])
            )
            .unwrap();
        }
        out
    }
}

/// Bins two decades of the same series and correlates their bin means.
///
/// Comparing a decade with itself is allowed and gives `r == 1`.
pub fn compare_decades<I>(
    a: &DecadeSpec,
    b: &DecadeSpec,
    series: I,
) -> Result<SimilarityReport, AnalysisError>
where
    I: IntoIterator<Item = Term>,
{
    if a.width != b.width || a.bins != b.bins {
        return Err(AnalysisError::MismatchedSpecs);
    }
    let mut binner_a = DecadeBinner::new(*a);
    let mut binner_b = DecadeBinner::new(*b);
    for term in series {
        binner_a.push(term);
        binner_b.push(term);
    }
    let means_a = binner_a.finish()?;
    let means_b = binner_b.finish()?;
    let fa: Vec<f64> = means_a.iter().map(ratio_to_f64).collect();
    let fb: Vec<f64> = means_b.iter().map(ratio_to_f64).collect();
    let pearson_r = pearson(&fa, &fb)?;
    Ok(SimilarityReport {
        width: a.width,
        decade_a: a.decade,
        decade_b: b.decade,
        bins: a.bins,
        means_a,
        means_b,
        pearson_r,
        normalization_a: a.normalization(),
        normalization_b: b.normalization(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryStats {
    pub min: u128,
    pub max: u128,
    pub count: u64,
    pub sum: u128,
}

impl SummaryStats {
    pub fn mean(&self) -> Ratio<u128> {
        Ratio::new(self.sum, u128::from(self.count))
    }
}

pub fn summary_stats<I>(series: I) -> Result<SummaryStats, AnalysisError>
where
    I: IntoIterator<Item = Term>,
{
    let mut iter = series.into_iter();
    let (_, first) = iter.next().ok_or(AnalysisError::EmptySeries)?;
    let mut stats = SummaryStats { min: first, max: first, count: 1, sum: first };
    for (_, v) in iter {
        stats.min = stats.min.min(v);
        stats.max = stats.max.max(v);
        stats.count += 1;
        stats.sum = stats.sum.checked_add(v).ok_or(AnalysisError::Overflow)?;
    }
    Ok(stats)
}
