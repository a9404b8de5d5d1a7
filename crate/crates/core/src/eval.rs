//! Digit sums, the weighted block term `T(m) = digitsum(m) * m`, and the
//! block sums `S_i`.

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::block::{decompose, Block, Width};
use crate::numeral::Numeral;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("the digit gcd of zero is undefined")]
    ZeroInput,
}

/// Largest power of ten that fits in a `u64`.
pub(crate) const MAX_U64_DIGITS: u32 = 20;

pub(crate) const POW10: [u64; 20] = {
    let mut table = [1u64; 20];
    let mut k = 1;
    while k < 20 {
        table[k] = table[k - 1] * 10;
        k += 1;
    }
    table
};

pub fn digit_sum(t: &Numeral) -> u64 {
    t.digits().iter().map(|&d| u64::from(d)).sum()
}

/// `T(block) = digit_sum * value`.
pub fn weighted_block(block: &Block) -> BigUint {
    block.value() * block.digit_sum()
}

/// `S_w(t)`: the weighted block terms summed over the width-`w` decomposition.
///
/// Exact for numerals of any length. Blocks of up to 19 digits are summed in
/// a `u128` accumulator that spills into the big total before it can
/// overflow; wider blocks go through [`decompose`] and [`weighted_block`].
pub fn eval_s(t: &Numeral, width: Width) -> BigUint {
    let digits = t.digits();
    let len = width.block_len(digits.len());
    if len >= MAX_U64_DIGITS as usize {
        return decompose(t, width).blocks().iter().map(weighted_block).sum();
    }
    let mut total = BigUint::ZERO;
    let mut partial = 0u128;
    for chunk in digits.rchunks(len) {
        let (sum, value) = chunk.iter().fold((0u64, 0u64), |(s, v), &d| {
            (s + u64::from(d), v * 10 + u64::from(d))
        });
        // sum <= 171 and value < 10^19, so one term is below 2^71.
        let term = u128::from(sum) * u128::from(value);
        partial = match partial.checked_add(term) {
            Some(p) => p,
            None => {
                total += partial;
                term
            }
        };
    }
    total + partial
}

pub fn digit_sum_u64(mut n: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % 10;
        n /= 10;
    }
    s
}

/// `S_w(t)` on machine words.
///
/// Never overflows: a `u64` has at most 20 digits, so every block term is
/// below `180 * 2^64` and the total stays well inside `u128`.
pub fn eval_s_u64(t: u64, width: Width) -> u128 {
    let modulus = match width {
        Width::Finite(i) if i.get() < MAX_U64_DIGITS => POW10[i.get() as usize],
        _ => return u128::from(digit_sum_u64(t)) * u128::from(t),
    };
    let mut rest = t;
    let mut total = 0u128;
    loop {
        let block = rest % modulus;
        rest /= modulus;
        total += u128::from(digit_sum_u64(block)) * u128::from(block);
        if rest == 0 {
            return total;
        }
    }
}

/// Greatest common divisor of the decimal digits of `t`.
pub fn digit_gcd(t: &Numeral) -> Result<u64, EvalError> {
    if t.is_zero() {
        return Err(EvalError::ZeroInput);
    }
    Ok(t.digits()
        .iter()
        .fold(0u64, |g, &d| g.gcd(&u64::from(d))))
}
