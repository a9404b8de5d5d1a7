//! Incremental evaluation of `S_i(n)` across consecutive `n`.
//!
//! The state mirrors the decimal digits of the current index together with
//! each block's digit sum and value. A decimal increment flips a run of
//! trailing nines to zero and bumps one digit, so only the blocks covering
//! that carry chain are touched, and the running total is patched by
//! removing their old terms and adding the new ones.

use crate::block::Width;
use crate::eval::{MAX_U64_DIGITS, POW10};

#[derive(Debug, Clone)]
pub struct OdometerState {
    block_len: usize,
    index: u64,
    /// Little-endian decimal digits of `index`.
    digits: Vec<u8>,
    /// Per block, least significant first.
    block_sums: Vec<u32>,
    block_values: Vec<u64>,
    total: u128,
}

#[inline(always)]
fn term(sum: u32, value: u64) -> u128 {
    u128::from(sum) * u128::from(value)
}

impl OdometerState {
    /// Seeds the state at `start`. An unbounded width behaves like a width
    /// of 20 digits, which already covers every `u64`.
    pub fn new(start: u64, width: Width) -> Self {
        let block_len = match width {
            Width::Finite(i) => i.get().min(MAX_U64_DIGITS) as usize,
            Width::Infinite => MAX_U64_DIGITS as usize,
        };
        let mut digits = Vec::with_capacity(MAX_U64_DIGITS as usize);
        let mut rest = start;
        loop {
            digits.push((rest % 10) as u8);
            rest /= 10;
            if rest == 0 {
                break;
            }
        }
        let (block_sums, block_values) = blocks_of(&digits, block_len);
        let total = block_sums
            .iter()
            .zip(&block_values)
            .map(|(&s, &v)| term(s, v))
            .sum();
        OdometerState { block_len, index: start, digits, block_sums, block_values, total }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `S_i` of the current index.
    pub fn value(&self) -> u128 {
        self.total
    }

    /// Moves to the next index. Returns `false` (and leaves the state
    /// unchanged) when the index is already `u64::MAX`.
    pub fn advance(&mut self) -> bool {
        let Some(next) = self.index.checked_add(1) else {
            return false;
        };
        #[cfg(debug_assertions)]
        let before = self.clone();

        let block_len = self.block_len;
        // Fast path: the lowest digit is not 9, so only block 0 changes and
        // (s + 1)(v + 1) - s v = s + v + 1.
        if self.digits[0] != 9 {
            self.digits[0] += 1;
            let (s, v) = (self.block_sums[0], self.block_values[0]);
            self.total += u128::from(s) + u128::from(v) + 1;
            self.block_sums[0] = s + 1;
            self.block_values[0] = v + 1;
        } else {
            let mut pos = 0;
            let mut last_block = 0;
            self.total -= term(self.block_sums[0], self.block_values[0]);
            loop {
                if pos == self.digits.len() {
                    self.digits.push(0);
                    if pos % block_len == 0 {
                        self.block_sums.push(0);
                        self.block_values.push(0);
                    }
                }
                let block = pos / block_len;
                if block != last_block {
                    last_block = block;
                    self.total -= term(self.block_sums[block], self.block_values[block]);
                }
                let place = POW10[pos % block_len];
                if self.digits[pos] == 9 {
                    self.digits[pos] = 0;
                    self.block_sums[block] -= 9;
                    self.block_values[block] -= 9 * place;
                    pos += 1;
                } else {
                    self.digits[pos] += 1;
                    self.block_sums[block] += 1;
                    self.block_values[block] += place;
                    break;
                }
            }
            for block in 0..=last_block {
                self.total += term(self.block_sums[block], self.block_values[block]);
            }
        }
        self.index = next;

        #[cfg(debug_assertions)]
        self.check_carry_locality(&before);
        true
    }

    /// Recomputes every block from the digit array and compares it with the
    /// cached sums, values and total.
    pub fn is_consistent(&self) -> bool {
        let (sums, values) = blocks_of(&self.digits, self.block_len);
        let total: u128 = sums.iter().zip(&values).map(|(&s, &v)| term(s, v)).sum();
        let index = self.digits.iter().rev().fold(0u64, |acc, &d| acc * 10 + u64::from(d));
        sums == self.block_sums
            && values == self.block_values
            && total == self.total
            && index == self.index
            && total == crate::eval::eval_s_u64(self.index, Width::finite(self.block_len as u32).unwrap())
    }

    /// [`advance`](Self::advance) followed by a full recomputation and a
    /// check that only blocks overlapping the carry chain changed.
    pub fn advance_verified(&mut self) -> bool {
        let before = self.clone();
        let moved = self.advance();
        if moved {
            self.check_carry_locality(&before);
        }
        moved
    }

    fn check_carry_locality(&self, before: &OdometerState) {
        assert!(self.is_consistent(), "odometer cache diverged at {}", self.index);
        let flipped = before.digits.iter().take_while(|&&d| d == 9).count() + 1;
        let touched_blocks = flipped.div_ceil(self.block_len);
        let untouched = before.block_sums.len().min(self.block_sums.len());
        for block in touched_blocks..untouched {
            assert_eq!(before.block_sums[block], self.block_sums[block]);
            assert_eq!(before.block_values[block], self.block_values[block]);
        }
    }
}

fn blocks_of(digits: &[u8], block_len: usize) -> (Vec<u32>, Vec<u64>) {
    digits
        .chunks(block_len)
        .map(|chunk| {
            let sum = chunk.iter().map(|&d| u32::from(d)).sum::<u32>();
            let value = chunk.iter().rev().fold(0u64, |acc, &d| acc * 10 + u64::from(d));
            (sum, value)
        })
        .unzip()
}
