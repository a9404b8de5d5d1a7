//! Block widths and the right-to-left block decomposition of a numeral.

use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::numeral::{digits_to_biguint, Numeral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WidthError {
    #[error("block width must be at least 1")]
    Zero,
    #[error("invalid block width {0:?}: expected a positive integer or \"inf\"")]
    Unparsable(String),
}

/// Block width: a positive digit count, or unbounded (the whole numeral is
/// one block).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Width {
    Finite(NonZeroU32),
    Infinite,
}

impl Width {
    pub fn finite(i: u32) -> Result<Self, WidthError> {
        NonZeroU32::new(i).map(Width::Finite).ok_or(WidthError::Zero)
    }

    /// Effective block length for a numeral of `digit_count` digits.
    pub fn block_len(self, digit_count: usize) -> usize {
        match self {
            Width::Finite(i) => (i.get() as usize).min(digit_count.max(1)),
            Width::Infinite => digit_count.max(1),
        }
    }

    pub fn as_finite(self) -> Option<u32> {
        match self {
            Width::Finite(i) => Some(i.get()),
            Width::Infinite => None,
        }
    }
}

impl FromStr for Width {
    type Err = WidthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "INF" | "∞" => Ok(Width::Infinite),
            other => {
                let i: u32 = other
                    .parse()
                    .map_err(|_| WidthError::Unparsable(s.to_string()))?;
                Width::finite(i)
            }
        }
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Width::Finite(i) => write!(f, "{i}"),
            Width::Infinite => f.write_str("inf"),
        }
    }
}

/// One group of consecutive digits, read as a decimal integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    digits: Vec<u8>,
    value: BigUint,
    digit_sum: u64,
}

impl Block {
    fn from_digits(digits: &[u8]) -> Self {
        debug_assert!(!digits.is_empty());
        Block {
            digits: digits.to_vec(),
            value: digits_to_biguint(digits),
            digit_sum: digits.iter().map(|&d| u64::from(d)).sum(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn digit_sum(&self) -> u64 {
        self.digit_sum
    }

    /// Digits in the source numeral, leading zeros included.
    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// Source digits, most significant first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }
}

/// Blocks of a numeral, least significant block first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    width: Width,
    blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn width(&self) -> Width {
        self.width
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Concatenates the blocks back into the source digits.
    pub fn reassemble(&self) -> Vec<u8> {
        self.blocks
            .iter()
            .rev()
            .flat_map(|b| b.digits.iter().copied())
            .collect()
    }
}

/// Cuts `t` into blocks of the given width from right to left; only the
/// most significant block may be shorter.
pub fn decompose(t: &Numeral, width: Width) -> BlockDecomposition {
    let digits = t.digits();
    let len = width.block_len(digits.len());
    let blocks = digits.rchunks(len).map(Block::from_digits).collect();
    BlockDecomposition { width, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(d: &BlockDecomposition) -> Vec<u64> {
        d.blocks()
            .iter()
            .map(|b| b.value().try_into().unwrap())
            .collect()
    }

    fn sums(d: &BlockDecomposition) -> Vec<u64> {
        d.blocks().iter().map(Block::digit_sum).collect()
    }

    #[test]
    fn worked_example_blocks() {
        let t: Numeral = "123456".parse().unwrap();
        let two = decompose(&t, Width::finite(2).unwrap());
        assert_eq!(values(&two), [56, 34, 12]);
        assert_eq!(sums(&two), [11, 7, 3]);

        let four = decompose(&t, Width::finite(4).unwrap());
        assert_eq!(values(&four), [3456, 12]);
        assert_eq!(sums(&four), [18, 3]);

        let five = decompose(&t, Width::finite(5).unwrap());
        assert_eq!(values(&five), [23456, 1]);

        for w in [Width::finite(6).unwrap(), Width::finite(7).unwrap(), Width::Infinite] {
            assert_eq!(values(&decompose(&t, w)), [123456]);
        }
    }

    #[test]
    fn leading_zero_block_keeps_its_digits() {
        let d = decompose(&"100".parse().unwrap(), Width::finite(2).unwrap());
        assert_eq!(values(&d), [0, 1]);
        assert_eq!(sums(&d), [0, 1]);
        let counts: Vec<_> = d.blocks().iter().map(Block::digit_count).collect();
        assert_eq!(counts, [2, 1]);
        assert_eq!(d.reassemble(), [1, 0, 0]);
    }

    #[test]
    fn zero_is_one_block() {
        let d = decompose(&Numeral::zero(), Width::finite(3).unwrap());
        assert_eq!(values(&d), [0]);
        assert_eq!(d.blocks()[0].digit_count(), 1);
    }

    #[test]
    fn width_parsing() {
        assert_eq!("inf".parse::<Width>(), Ok(Width::Infinite));
        assert_eq!("3".parse::<Width>(), Width::finite(3));
        assert_eq!("0".parse::<Width>(), Err(WidthError::Zero));
        assert!("x".parse::<Width>().is_err());
        assert!("-1".parse::<Width>().is_err());
        assert_eq!(Width::finite(7).unwrap().to_string(), "7");
        assert_eq!(Width::Infinite.to_string(), "inf");
    }

    #[test]
    fn block_invariants_hold_up_to_ten_to_the_six() {
        for t in (0..=1_000_000u64).step_by(7) {
            let n = Numeral::from(t);
            for i in 1..=8 {
                let d = decompose(&n, Width::finite(i).unwrap());
                assert_eq!(d.reassemble(), n.digits(), "t={t} i={i}");
                let (last, rest) = d.blocks().split_last().unwrap();
                assert!(rest.iter().all(|b| b.digit_count() == i as usize));
                assert!((1..=i as usize).contains(&last.digit_count()));
                if i as usize >= n.len() {
                    assert_eq!(d.blocks().len(), 1);
                }
                for b in d.blocks() {
                    assert!(b.digit_sum() <= 9 * b.digit_count() as u64);
                    assert_eq!(b.digit_sum() == 0, b.value() == &BigUint::ZERO);
                    assert!(b.value() < &BigUint::from(10u32).pow(b.digit_count() as u32));
                }
            }
        }
    }
}
