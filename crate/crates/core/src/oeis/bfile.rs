//! The OEIS b-file text format: one `index value` pair per line, `#`
//! comments, blank lines ignored.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFileError {
    #[error("line {line}: malformed b-file line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: index {found} does not follow {previous}")]
    NonConsecutiveIndex { line: usize, previous: i64, found: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BFileRecord {
    pub index: i64,
    pub value: BigInt,
}

impl BFileRecord {
    pub fn new(index: i64, value: impl Into<BigInt>) -> Self {
        BFileRecord { index, value: value.into() }
    }
}

pub fn parse_bfile(bytes: &[u8]) -> Result<Vec<BFileRecord>, BFileError> {
    let mut records: Vec<BFileRecord> = Vec::new();
    for (line_no, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = line_no + 1;
        let malformed = || BFileError::MalformedLine {
            line,
            content: String::from_utf8_lossy(raw).into_owned(),
        };
        let text = std::str::from_utf8(raw).map_err(|_| malformed())?.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let index: i64 = index.parse().map_err(|_| malformed())?;
        let value: BigInt = value.parse().map_err(|_| malformed())?;
        if let Some(prev) = records.last() {
            if prev.index.checked_add(1) != Some(index) {
                return Err(BFileError::NonConsecutiveIndex { line, previous: prev.index, found: index });
            }
        }
        records.push(BFileRecord { index, value });
    }
    Ok(records)
}

pub fn write_bfile(records: &[BFileRecord]) -> Result<Vec<u8>, BFileError> {
    if records.is_empty() {
        log::warn!("writing an empty b-file");
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(records.len() * 12);
    for (k, pair) in records.windows(2).enumerate() {
        if pair[0].index.checked_add(1) != Some(pair[1].index) {
            return Err(BFileError::NonConsecutiveIndex {
                line: k + 2,
                previous: pair[0].index,
                found: pair[1].index,
            });
        }
    }
    for r in records {
        out.extend_from_slice(format!("{} {}\n", r.index, r.value).as_bytes());
    }
    Ok(out)
}
