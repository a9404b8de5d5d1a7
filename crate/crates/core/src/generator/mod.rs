//! Streaming production of the sequences `(S_i(1), S_i(2), …)` over index
//! ranges.
//!
//! Two evaluation strategies produce identical streams: [`generate_naive`]
//! applies the word-sized evaluator to every index, and
//! [`generate_incremental`] walks an [`OdometerState`] that is patched on
//! each decimal increment. Ranges are cut into chunks by [`partition`];
//! [`ChunkStream`] evaluates chunks on up to `jobs` threads and yields them
//! strictly in index order, so output never depends on the worker count.

mod odometer;

use std::collections::VecDeque;
use std::iter::FusedIterator;
use std::num::NonZeroUsize;

use thiserror::Error;

pub use odometer::OdometerState;

use crate::block::Width;
use crate::eval::eval_s_u64;

/// One element of a term stream: `(n, S_w(n))`.
pub type Term = (u64, u128);

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("range start must be at least 1")]
    ZeroStart,
    #[error("range end {end} is before start {start}")]
    Reversed { start: u64, end: u64 },
    #[error("chunk size must be at least 1")]
    ZeroChunk,
}

/// An inclusive index range to evaluate at one width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeRequest {
    width: Width,
    start: u64,
    end: u64,
    chunk_size: u64,
}

impl RangeRequest {
    pub fn new(width: Width, start: u64, end: u64) -> Result<Self, RangeError> {
        if start == 0 {
            return Err(RangeError::ZeroStart);
        }
        if end < start {
            return Err(RangeError::Reversed { start, end });
        }
        Ok(RangeRequest { width, start, end, chunk_size: DEFAULT_CHUNK_SIZE })
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> Result<Self, RangeError> {
        if chunk_size == 0 {
            return Err(RangeError::ZeroChunk);
        }
        self.chunk_size = chunk_size;
        Ok(self)
    }

    pub fn width(&self) -> Width {
        self.width
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }

    /// Number of indices covered, saturating at `u64::MAX`.
    pub fn len(&self) -> u64 {
        (self.end - self.start).saturating_add(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Consecutive values starting at `first_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesChunk {
    pub first_index: u64,
    pub values: Vec<u128>,
}

impl SeriesChunk {
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        (self.first_index..).zip(self.values.iter().copied())
    }

    pub fn into_terms(self) -> impl Iterator<Item = Term> {
        (self.first_index..).zip(self.values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Naive,
    #[default]
    Incremental,
}

/// Reference stream: evaluates each index from scratch.
pub fn generate_naive(req: &RangeRequest) -> NaiveTerms {
    NaiveTerms { width: req.width, next: Some(req.start), end: req.end }
}

#[derive(Debug, Clone)]
pub struct NaiveTerms {
    width: Width,
    next: Option<u64>,
    end: u64,
}

impl Iterator for NaiveTerms {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        let n = self.next?;
        self.next = if n < self.end { Some(n + 1) } else { None };
        Some((n, eval_s_u64(n, self.width)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        remaining_hint(self.next, self.end)
    }
}

impl FusedIterator for NaiveTerms {}

/// Fast stream: carries an odometer from index to index.
pub fn generate_incremental(req: &RangeRequest) -> IncrementalTerms {
    IncrementalTerms { state: OdometerState::new(req.start, req.width), end: req.end, done: false }
}

#[derive(Debug, Clone)]
pub struct IncrementalTerms {
    state: OdometerState,
    end: u64,
    done: bool,
}

impl Iterator for IncrementalTerms {
    type Item = Term;

    #[inline]
    fn next(&mut self) -> Option<Term> {
        if self.done {
            return None;
        }
        let term = (self.state.index(), self.state.value());
        if term.0 < self.end {
            self.state.advance();
        } else {
            self.done = true;
        }
        Some(term)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let next = (!self.done).then(|| self.state.index());
        remaining_hint(next, self.end)
    }
}

impl FusedIterator for IncrementalTerms {}

fn remaining_hint(next: Option<u64>, end: u64) -> (usize, Option<usize>) {
    match next {
        None => (0, Some(0)),
        Some(n) => match usize::try_from(end - n).ok().and_then(|r| r.checked_add(1)) {
            Some(r) => (r, Some(r)),
            None => (usize::MAX, None),
        },
    }
}

/// Splits a request into consecutive sub-requests of at most `chunk_size`
/// indices each.
pub fn partition(req: &RangeRequest) -> Partition {
    Partition { template: *req, next: Some(req.start) }
}

#[derive(Debug, Clone)]
pub struct Partition {
    template: RangeRequest,
    next: Option<u64>,
}

impl Iterator for Partition {
    type Item = RangeRequest;

    fn next(&mut self) -> Option<RangeRequest> {
        let start = self.next?;
        let end = start
            .saturating_add(self.template.chunk_size - 1)
            .min(self.template.end);
        self.next = if end < self.template.end { Some(end + 1) } else { None };
        Some(RangeRequest { start, end, ..self.template })
    }
}

impl FusedIterator for Partition {}

/// Evaluates one request into a single chunk.
pub fn evaluate_chunk(req: &RangeRequest, strategy: Strategy) -> SeriesChunk {
    let values = match strategy {
        Strategy::Naive => generate_naive(req).map(|(_, v)| v).collect(),
        Strategy::Incremental => generate_incremental(req).map(|(_, v)| v).collect(),
    };
    SeriesChunk { first_index: req.start, values }
}

/// Chunked, optionally parallel evaluation of a request with an ordered
/// merge.
pub fn generate_chunks(req: &RangeRequest, strategy: Strategy, jobs: NonZeroUsize) -> ChunkStream {
    ChunkStream { parts: partition(req), strategy, jobs: jobs.get(), ready: VecDeque::new() }
}

#[derive(Debug)]
pub struct ChunkStream {
    parts: Partition,
    strategy: Strategy,
    jobs: usize,
    ready: VecDeque<SeriesChunk>,
}

impl ChunkStream {
    /// Flattens the chunks into a term stream.
    pub fn terms(self) -> impl Iterator<Item = Term> {
        self.flat_map(SeriesChunk::into_terms)
    }

    fn refill(&mut self) {
        let batch: Vec<RangeRequest> = self.parts.by_ref().take(self.jobs).collect();
        let strategy = self.strategy;
        if batch.len() <= 1 {
            self.ready.extend(batch.iter().map(|r| evaluate_chunk(r, strategy)));
            return;
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .iter()
                .map(|r| scope.spawn(move || evaluate_chunk(r, strategy)))
                .collect();
            for handle in handles {
                self.ready.push_back(handle.join().expect("chunk worker panicked"));
            }
        });
    }
}

impl Iterator for ChunkStream {
    type Item = SeriesChunk;

    fn next(&mut self) -> Option<SeriesChunk> {
        if self.ready.is_empty() {
            self.refill();
        }
        self.ready.pop_front()
    }
}

impl FusedIterator for ChunkStream {}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(i: u32) -> Width {
        Width::finite(i).unwrap()
    }

    fn values(it: impl Iterator<Item = Term>) -> Vec<u128> {
        it.map(|(_, v)| v).collect()
    }

    #[test]
    fn naive_examples() {
        let req = RangeRequest::new(w(1), 1, 10).unwrap();
        assert_eq!(values(generate_naive(&req)), [1, 4, 9, 16, 25, 36, 49, 64, 81, 1]);
        let req = RangeRequest::new(w(6), 123456, 123456).unwrap();
        assert_eq!(values(generate_naive(&req)), [2592576]);
        let req = RangeRequest::new(w(2), 1, 1).unwrap();
        assert_eq!(values(generate_naive(&req)), [1]);
    }

    #[test]
    fn incremental_examples() {
        let req = RangeRequest::new(w(2), 99, 101).unwrap();
        assert_eq!(values(generate_incremental(&req)), [1782, 1, 2]);
        let req = RangeRequest::new(w(1), 1, 1).unwrap();
        assert_eq!(values(generate_incremental(&req)), [1]);
    }

    #[test]
    fn incremental_matches_naive_near_u64_max() {
        let req = RangeRequest::new(Width::Infinite, u64::MAX - 3, u64::MAX).unwrap();
        let a: Vec<_> = generate_incremental(&req).collect();
        assert_eq!(a, generate_naive(&req).collect::<Vec<_>>());
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn rejects_bad_requests() {
        assert_eq!(RangeRequest::new(w(1), 0, 3), Err(RangeError::ZeroStart));
        assert_eq!(RangeRequest::new(w(1), 5, 3), Err(RangeError::Reversed { start: 5, end: 3 }));
        assert_eq!(
            RangeRequest::new(w(1), 1, 3).unwrap().with_chunk_size(0),
            Err(RangeError::ZeroChunk)
        );
    }

    #[test]
    fn partitions() {
        let spans = |start, end, chunk| {
            let req = RangeRequest::new(w(1), start, end).unwrap().with_chunk_size(chunk).unwrap();
            partition(&req).map(|r| (r.start(), r.end())).collect::<Vec<_>>()
        };
        assert_eq!(spans(1, 10, 4), [(1, 4), (5, 8), (9, 10)]);
        assert_eq!(spans(5, 5, 100), [(5, 5)]);
        assert_eq!(spans(1, 1_000_000, 100_000).len(), 10);
        assert_eq!(spans(u64::MAX - 2, u64::MAX, 2), [(u64::MAX - 2, u64::MAX - 1), (u64::MAX, u64::MAX)]);
    }

    #[test]
    fn chunk_streams_are_ordered_for_any_job_count() {
        let req = RangeRequest::new(w(3), 1, 10_007).unwrap().with_chunk_size(333).unwrap();
        let reference = values(generate_naive(&req));
        for jobs in [1, 2, 3, 8] {
            for strategy in [Strategy::Naive, Strategy::Incremental] {
                let got: Vec<Term> =
                    generate_chunks(&req, strategy, NonZeroUsize::new(jobs).unwrap()).terms().collect();
                assert_eq!(got.first().unwrap().0, 1);
                assert_eq!(got.last().unwrap().0, 10_007);
                assert_eq!(values(got.into_iter()), reference, "jobs={jobs} {strategy:?}");
            }
        }
    }

    #[test]
    fn size_hints_are_exact() {
        let req = RangeRequest::new(w(2), 10, 19).unwrap();
        let mut it = generate_incremental(&req);
        assert_eq!(it.size_hint(), (10, Some(10)));
        it.next();
        assert_eq!(it.size_hint(), (9, Some(9)));
        assert_eq!(generate_naive(&req).count(), 10);
    }
}
