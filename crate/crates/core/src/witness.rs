//! Constructive witnesses: digit scaling, repdigits, and numerals that hit a
//! chosen value of `S_i`.

use thiserror::Error;

use crate::block::Width;
use crate::numeral::Numeral;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("digit {digit} at position {position} is not divisible by {factor}")]
    DigitNotDivisible { position: usize, digit: u8, factor: u64 },
    #[error("scale factor must be at least 2, got {0}")]
    FactorTooSmall(u64),
    #[error("a witness needs a finite block width")]
    InfiniteWidth,
    #[error("target value must be at least 1")]
    ZeroTarget,
    #[error("repdigit digit must be in 1..=9, got {0}")]
    InvalidDigit(u8),
    #[error("repdigit length must be at least 1")]
    ZeroLength,
}

/// Divides every digit of `t` by `k`, keeping the digit count.
///
/// With `b = scale_down_digits(t, k)`, `S_i(t) == k^2 * S_i(b)` for every width.
pub fn scale_down_digits(t: &Numeral, k: u64) -> Result<Numeral, WitnessError> {
    if k < 2 {
        return Err(WitnessError::FactorTooSmall(k));
    }
    let digits = t
        .digits()
        .iter()
        .enumerate()
        .map(|(position, &digit)| {
            if u64::from(digit) % k == 0 {
                Ok((u64::from(digit) / k) as u8)
            } else {
                Err(WitnessError::DigitNotDivisible { position, digit, factor: k })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    // A nonzero leading digit divisible by k has a quotient of at least 1.
    Ok(Numeral::from_digits_unchecked(digits))
}

/// The `len`-digit numeral whose digits all equal `digit`.
pub fn repdigit(digit: u8, len: usize) -> Result<Numeral, WitnessError> {
    if !(1..=9).contains(&digit) {
        return Err(WitnessError::InvalidDigit(digit));
    }
    if len == 0 {
        return Err(WitnessError::ZeroLength);
    }
    Ok(Numeral::from_digits_unchecked(vec![digit; len]))
}

/// A numeral `t` with `S_i(t) == target`: a leading `1` followed by
/// `target - 1` groups of `i` digits, each group `0…01`.
pub fn surjectivity_witness(width: Width, target: u64) -> Result<Numeral, WitnessError> {
    let i = width.as_finite().ok_or(WitnessError::InfiniteWidth)? as usize;
    if target == 0 {
        return Err(WitnessError::ZeroTarget);
    }
    let groups = (target - 1) as usize;
    let mut digits = Vec::with_capacity(1 + groups * i);
    digits.push(1);
    for _ in 0..groups {
        digits.extend(std::iter::repeat_n(0, i - 1));
        digits.push(1);
    }
    Ok(Numeral::from_digits_unchecked(digits))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::eval::eval_s;

    fn w(i: u32) -> Width {
        Width::finite(i).unwrap()
    }

    #[test]
    fn scales_digits() {
        let b = scale_down_digits(&"2468".parse().unwrap(), 2).unwrap();
        assert_eq!(b.to_string(), "1234");
        assert_eq!(eval_s(&"2468".parse().unwrap(), w(1)), BigUint::from(120u32));
        assert_eq!(eval_s(&b, w(1)), BigUint::from(30u32));

        assert_eq!(scale_down_digits(&"777".parse().unwrap(), 7).unwrap().to_string(), "111");
        assert_eq!(scale_down_digits(&"80".parse().unwrap(), 8).unwrap().to_string(), "10");
        assert_eq!(
            scale_down_digits(&"123".parse().unwrap(), 2),
            Err(WitnessError::DigitNotDivisible { position: 0, digit: 1, factor: 2 })
        );
        assert_eq!(
            scale_down_digits(&"5".parse().unwrap(), 1),
            Err(WitnessError::FactorTooSmall(1))
        );
        assert!(scale_down_digits(&"9".parse().unwrap(), 10).is_err());
    }

    #[test]
    fn repdigits() {
        assert_eq!(repdigit(7, 3).unwrap().to_string(), "777");
        assert_eq!(repdigit(1, 5).unwrap().to_string(), "11111");
        assert_eq!(repdigit(9, 1).unwrap().to_string(), "9");
        assert_eq!(repdigit(0, 3), Err(WitnessError::InvalidDigit(0)));
        assert_eq!(repdigit(3, 0), Err(WitnessError::ZeroLength));
    }

    #[test]
    fn witnesses() {
        let t = surjectivity_witness(w(2), 3).unwrap();
        assert_eq!(t.to_string(), "10101");
        assert_eq!(eval_s(&t, w(2)), BigUint::from(3u32));

        for i in 1..=9 {
            assert_eq!(surjectivity_witness(w(i), 1).unwrap().to_string(), "1");
        }
        assert_eq!(surjectivity_witness(w(1), 4).unwrap().to_string(), "1111");
        assert_eq!(surjectivity_witness(w(3), 3).unwrap().to_string(), "1001001");
        assert_eq!(surjectivity_witness(Width::Infinite, 3), Err(WitnessError::InfiniteWidth));
        assert_eq!(surjectivity_witness(w(2), 0), Err(WitnessError::ZeroTarget));
    }
}
