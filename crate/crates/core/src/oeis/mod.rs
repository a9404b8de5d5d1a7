//! OEIS interop: b-files, a local sequence cache, and cross-checks of `S_w`
//! against published sequences.

mod bfile;
mod cache;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

pub use bfile::{parse_bfile, write_bfile, BFileError, BFileRecord};
pub use cache::{default_cache_dir, fetch_sequence, Fetcher, OfflineFetcher, CACHE_DIR_ENV};
#[cfg(feature = "http")]
pub use cache::HttpFetcher;

use crate::block::Width;
use crate::eval::eval_s_u64;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("invalid sequence id {0:?}: expected 'A' followed by six digits")]
    InvalidId(String),
    #[error("network unavailable fetching {url}: {reason}")]
    NetworkUnavailable { url: String, reason: String },
    #[error(transparent)]
    BFile(#[from] BFileError),
    #[error("cache I/O error at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("{id} has no term at index {index}")]
    SequenceTooShort { id: SequenceId, index: u64 },
}

/// An OEIS A-number such as `A057147`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceId(u32);

impl SequenceId {
    pub fn number(&self) -> u32 {
        self.0
    }

    /// Upstream b-file name, e.g. `b057147.txt`.
    pub fn bfile_name(&self) -> String {
        format!("b{:06}.txt", self.0)
    }

    pub fn bfile_url(&self) -> String {
        format!("https://oeis.org/{self}/{}", self.bfile_name())
    }
}

impl FromStr for SequenceId {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix('A')
            .filter(|d| d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| OeisError::InvalidId(s.to_string()))?;
        Ok(SequenceId(digits.parse().expect("six ASCII digits")))
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:06}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossCheck {
    Clean,
    Mismatch { index: u64, computed: u128, expected: BigInt },
}

/// Compares `S_w(n)` with the sequence for `n = 1..=count`.
pub fn cross_check(
    id: SequenceId,
    width: Width,
    count: u64,
    cache_dir: &Path,
    fetcher: &dyn Fetcher,
) -> Result<CrossCheck, OeisError> {
    if count == 0 {
        return Err(OeisError::ZeroCount);
    }
    let records = fetch_sequence(id, cache_dir, fetcher)?;
    compare_records(id, &records, width, count)
}

/// The comparison half of [`cross_check`], on already-parsed records.
pub fn compare_records(
    id: SequenceId,
    records: &[BFileRecord],
    width: Width,
    count: u64,
) -> Result<CrossCheck, OeisError> {
    if count == 0 {
        return Err(OeisError::ZeroCount);
    }
    // The file's own first index is authoritative; records are consecutive.
    let first = records.first().map(|r| r.index);
    for n in 1..=count {
        let record = first
            .and_then(|f| i64::try_from(n).ok()?.checked_sub(f))
            .and_then(|offset| usize::try_from(offset).ok())
            .and_then(|offset| records.get(offset))
            .ok_or(OeisError::SequenceTooShort { id, index: n })?;
        let computed = eval_s_u64(n, width);
        if BigInt::from(computed) != record.value {
            return Ok(CrossCheck::Mismatch { index: n, computed, expected: record.value.clone() });
        }
    }
    Ok(CrossCheck::Clean)
}
