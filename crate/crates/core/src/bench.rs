//! Timing harness comparing the naive and incremental generators.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::generator::{generate_incremental, generate_naive, RangeRequest};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchReport {
    pub terms: u64,
    pub naive: Duration,
    pub incremental: Duration,
    /// Wrapping sum of all values; equal for both strategies when they agree.
    pub naive_checksum: u128,
    pub incremental_checksum: u128,
}

impl BenchReport {
    pub fn speedup(&self) -> f64 {
        self.naive.as_secs_f64() / self.incremental.as_secs_f64().max(f64::MIN_POSITIVE)
    }

    pub fn agree(&self) -> bool {
        self.naive_checksum == self.incremental_checksum
    }
}

fn checksum(values: impl Iterator<Item = (u64, u128)>) -> u128 {
    values.fold(0u128, |acc, (n, v)| acc.wrapping_add(black_box(v).wrapping_mul(u128::from(n))))
}

/// Generates the whole request single-threaded with each strategy.
pub fn compare_strategies(req: &RangeRequest) -> BenchReport {
    let started = Instant::now();
    let naive_checksum = checksum(generate_naive(req));
    let naive = started.elapsed();

    let started = Instant::now();
    let incremental_checksum = checksum(generate_incremental(req));
    let incremental = started.elapsed();

    BenchReport { terms: req.len(), naive, incremental, naive_checksum, incremental_checksum }
}
