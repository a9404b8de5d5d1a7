//! Digit-block sums.
//!
//! Cut a decimal numeral into blocks of `i` digits from the right (the
//! leftmost block may be shorter) and add up `digit_sum(block) * block` over
//! all blocks; that total is `S_i(t)`. With unbounded width the whole numeral
//! is one block and `S_inf(t) = digit_sum(t) * t`.
//!
//! ```
//! use blocksum::{eval_s, Numeral, Width};
//!
//! let t: Numeral = "123456".parse().unwrap();
//! // [12][34][56] -> 3*12 + 7*34 + 11*56
//! assert_eq!(eval_s(&t, Width::finite(2).unwrap()), 890u32.into());
//! ```

pub mod analysis;
pub mod bench;
pub mod block;
pub mod eval;
pub mod generator;
pub mod numeral;
pub mod oeis;
pub mod plot;
pub mod witness;

pub use block::{decompose, Block, BlockDecomposition, Width, WidthError};
pub use eval::{digit_gcd, digit_sum, eval_s, eval_s_u64, weighted_block, EvalError};
pub use generator::{RangeRequest, SeriesChunk, Strategy, Term};
pub use numeral::{Numeral, NumeralError};
pub use witness::{repdigit, scale_down_digits, surjectivity_witness, WitnessError};
