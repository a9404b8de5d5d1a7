//! Canonical decimal numerals of unbounded length.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumeralError {
    #[error("numeral is empty")]
    Empty,
    #[error("invalid character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("digit {digit} at position {position} is not a decimal digit")]
    DigitOutOfRange { position: usize, digit: u8 },
    #[error("numeral has a leading zero")]
    LeadingZero,
}

/// A natural number held as its decimal digits, most significant first.
///
/// The representation is canonical: at least one digit, and no leading zero
/// unless the value is zero itself (stored as the single digit `0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    digits: Vec<u8>,
}

impl Numeral {
    pub fn zero() -> Self {
        Numeral { digits: vec![0] }
    }

    /// Builds a numeral from most-significant-first digits, rejecting
    /// anything that is not canonical.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self, NumeralError> {
        if digits.is_empty() {
            return Err(NumeralError::Empty);
        }
        if let Some((position, &digit)) = digits.iter().enumerate().find(|(_, &d)| d > 9) {
            return Err(NumeralError::DigitOutOfRange { position, digit });
        }
        if digits.len() > 1 && digits[0] == 0 {
            return Err(NumeralError::LeadingZero);
        }
        Ok(Numeral { digits })
    }

    pub(crate) fn from_digits_unchecked(digits: Vec<u8>) -> Self {
        debug_assert!(Numeral::from_digits(digits.clone()).is_ok());
        Numeral { digits }
    }

    /// Digits, most significant first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Number of decimal digits (`1` for zero).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false: a canonical numeral has at least one digit.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    pub fn to_biguint(&self) -> BigUint {
        digits_to_biguint(&self.digits)
    }

    /// The value as a `u64`, or `None` if it does not fit.
    pub fn to_u64(&self) -> Option<u64> {
        self.digits.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(10)?.checked_add(u64::from(d))
        })
    }
}

pub(crate) fn digits_to_biguint(digits: &[u8]) -> BigUint {
    // parse_bytes wants ASCII; radix conversion inside num-bigint is
    // sub-quadratic, which matters for witnesses with millions of digits.
    let ascii: Vec<u8> = digits.iter().map(|d| b'0' + d).collect();
    BigUint::parse_bytes(&ascii, 10).expect("digits are validated")
}

impl FromStr for Numeral {
    type Err = NumeralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .chars()
            .enumerate()
            .map(|(position, c)| {
                c.to_digit(10)
                    .filter(|_| c.is_ascii_digit())
                    .map(|d| d as u8)
                    .ok_or(NumeralError::InvalidCharacter { position, found: c })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Numeral::from_digits(digits)
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.digits.iter().map(|&d| char::from(b'0' + d)).collect();
        f.pad(&s)
    }
}

impl From<u64> for Numeral {
    fn from(mut n: u64) -> Self {
        if n == 0 {
            return Numeral::zero();
        }
        let mut digits = Vec::with_capacity(20);
        while n > 0 {
            digits.push((n % 10) as u8);
            n /= 10;
        }
        digits.reverse();
        Numeral { digits }
    }
}

impl From<&BigUint> for Numeral {
    fn from(n: &BigUint) -> Self {
        let digits = n.to_radix_be(10);
        Numeral { digits }
    }
}
