//! Number-theoretic identities of `S_i`, checked against an independent
//! string-slicing evaluator and as proptest invariants.

use std::num::NonZeroUsize;

use blocksum::analysis::{bin_decade, compare_decades, DecadeSpec};
use blocksum::generator::{generate_chunks, generate_incremental, generate_naive, RangeRequest, Strategy as Eval};
use blocksum::oeis::{parse_bfile, write_bfile, BFileRecord};
use blocksum::{
    decompose, digit_gcd, eval_s, eval_s_u64, repdigit, scale_down_digits, surjectivity_witness,
    Numeral, Width,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Reference evaluator: cut the decimal string from the right and sum
/// `digitsum * value` with plain `u128` arithmetic.
fn oracle_s(t: &str, width: Option<usize>) -> u128 {
    let mut rest = t;
    let mut total = 0u128;
    let len = width.unwrap_or(t.len());
    while !rest.is_empty() {
        let cut = rest.len().saturating_sub(len);
        let (head, block) = rest.split_at(cut);
        let sum: u128 = block.bytes().map(|b| u128::from(b - b'0')).sum();
        total += sum * block.parse::<u128>().unwrap();
        rest = head;
    }
    total
}

fn w(i: u32) -> Width {
    Width::finite(i).unwrap()
}

fn widths() -> impl Iterator<Item = Width> {
    (1..=8).map(w).chain([Width::Infinite])
}

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

/// Numerals of up to `max_len` digits, each a multiple of `k`, leading digit nonzero.
fn divisible_numeral(k: u8, max_len: usize) -> impl Strategy<Value = Numeral> {
    let multiples: Vec<u8> = (0..=9).filter(|d| d % k == 0).collect();
    let leading: Vec<u8> = multiples.iter().copied().filter(|&d| d != 0).collect();
    (prop::sample::select(leading), prop::collection::vec(prop::sample::select(multiples), 0..max_len))
        .prop_map(|(first, mut rest)| {
            rest.insert(0, first);
            Numeral::from_digits(rest).unwrap()
        })
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..=n).find(|&p| n.is_multiple_of(p)).unwrap()
}

#[test]
fn evaluators_agree_with_the_oracle_below_two_hundred_thousand() {
    for t in 0..200_000u64 {
        let s = t.to_string();
        for i in 1..=8u32 {
            let expected = oracle_s(&s, Some(i as usize));
            assert_eq!(eval_s_u64(t, w(i)), expected, "t={t} i={i}");
        }
        assert_eq!(eval_s_u64(t, Width::Infinite), oracle_s(&s, None));
    }
}

#[test]
fn decomposition_round_trips_up_to_ten_to_the_six() {
    for t in 0..=1_000_000u64 {
        let n = Numeral::from(t);
        for i in 1..=8 {
            assert_eq!(decompose(&n, w(i)).reassemble(), n.digits(), "t={t} i={i}");
        }
    }
}

#[test]
fn single_digits_square() {
    for t in 0..=9u64 {
        let n = Numeral::from(t);
        for width in (1..=20).map(w).chain([Width::Infinite]) {
            assert_eq!(eval_s(&n, width), big(u128::from(t * t)));
        }
    }
}

#[test]
fn ten_to_the_i_collides_with_one() {
    for i in 1..=8u32 {
        let power = Numeral::from(10u64.pow(i));
        assert_eq!(eval_s(&power, w(i)), big(1));
        assert_eq!(eval_s(&Numeral::from(1), w(i)), big(1));
    }
}

#[test]
fn witnesses_round_trip() {
    for i in 1..=5u32 {
        for n in (1..=10_000u64).step_by(97).chain([10_000]) {
            let t = surjectivity_witness(w(i), n).unwrap();
            assert_eq!(eval_s(&t, w(i)), big(u128::from(n)), "i={i} n={n}");
        }
    }
}

#[test]
fn repdigits_scale_by_the_square() {
    for a in 1..=9u8 {
        for len in 1..=10 {
            let scaled = repdigit(a, len).unwrap();
            let ones = repdigit(1, len).unwrap();
            for width in widths() {
                assert_eq!(eval_s(&scaled, width), eval_s(&ones, width) * u32::from(a) * u32::from(a));
            }
        }
    }
}

#[test]
fn incremental_equals_naive_on_shifted_ranges() {
    for i in 1..=8 {
        let req = RangeRequest::new(w(i), 999_990, 1_010_010).unwrap();
        assert!(generate_incremental(&req).eq(generate_naive(&req)), "i={i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn big_and_word_paths_agree(t in any::<u64>(), i in 1u32..=22) {
        let n = Numeral::from(t);
        prop_assert_eq!(eval_s(&n, w(i)), big(eval_s_u64(t, w(i))));
        prop_assert_eq!(eval_s_u64(t, w(i)), oracle_s(&t.to_string(), Some(i as usize)));
    }

    #[test]
    fn digit_scaling_multiplies_by_k_squared(
        (k, t) in prop_oneof![Just(2u8), Just(3u8), Just(4u8)].prop_flat_map(|k| (Just(k), divisible_numeral(k, 12)))
    ) {
        let b = scale_down_digits(&t, u64::from(k)).unwrap();
        prop_assert_eq!(b.len(), t.len());
        for width in widths() {
            prop_assert_eq!(eval_s(&t, width), eval_s(&b, width) * u32::from(k * k));
        }
    }

    #[test]
    fn common_digit_factor_makes_s_composite(t in divisible_numeral(2, 15), width_idx in 0usize..9) {
        let width = widths().nth(width_idx).unwrap();
        let g = digit_gcd(&t).unwrap();
        prop_assume!(g > 1);
        let p = smallest_prime_factor(g);
        let s = eval_s(&t, width);
        prop_assert_eq!(&s % p, BigUint::ZERO);
        prop_assert!(s > BigUint::from(p), "{} is prime", s);
    }

    #[test]
    fn wide_blocks_saturate(t in any::<u64>(), extra in 0u32..5) {
        let n = Numeral::from(t);
        let i = n.len() as u32 + extra;
        prop_assert_eq!(eval_s(&n, w(i)), eval_s(&n, Width::Infinite));
    }

    #[test]
    fn block_bound(t in 1u64..u64::MAX / 200, i in 1u32..=8) {
        let digits = Numeral::from(t).len() as u128;
        prop_assert!(eval_s_u64(t, w(i)) <= 9 * digits * u128::from(t));
    }

    #[test]
    fn chunking_never_changes_the_stream(
        start in 1u64..50_000, len in 1u64..4_000, chunk in 1u64..700, jobs in 1usize..5, i in 1u32..=8
    ) {
        let req = RangeRequest::new(w(i), start, start + len - 1).unwrap().with_chunk_size(chunk).unwrap();
        let expected: Vec<_> = generate_naive(&req).collect();
        let jobs = NonZeroUsize::new(jobs).unwrap();
        let got: Vec<_> = generate_chunks(&req, Eval::Incremental, jobs).terms().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bins_ignore_chunk_boundaries(chunk in 1u64..5_000, jobs in 1usize..4) {
        let spec = DecadeSpec::new(w(2), 3, 100).unwrap();
        let req = RangeRequest::new(w(2), 1, 9_999).unwrap().with_chunk_size(chunk).unwrap();
        let chunked = generate_chunks(&req, Eval::Incremental, NonZeroUsize::new(jobs).unwrap());
        prop_assert_eq!(
            bin_decade(chunked.terms(), &spec).unwrap(),
            bin_decade(generate_naive(&req), &spec).unwrap()
        );
    }

    #[test]
    fn pearson_ignores_positive_scaling(scale in 1u128..100, i in 1u32..=7) {
        let a = DecadeSpec::new(w(i), 2, 30).unwrap();
        let b = DecadeSpec::new(w(i), 3, 30).unwrap();
        let req = RangeRequest::new(w(i), 100, 9_999).unwrap();
        let plain = compare_decades(&a, &b, generate_naive(&req)).unwrap();
        let scaled = compare_decades(&a, &b, generate_naive(&req).map(|(n, v)| (n, v * scale))).unwrap();
        prop_assert!((plain.pearson_r - scaled.pearson_r).abs() <= 1e-12);
    }

    #[test]
    fn bfile_codec_round_trips(first in -5i64..5, values in prop::collection::vec(any::<i128>(), 0..200)) {
        let records: Vec<BFileRecord> = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| BFileRecord::new(first + k as i64, v))
            .collect();
        prop_assert_eq!(parse_bfile(&write_bfile(&records).unwrap()).unwrap(), records);
    }
}

#[test]
fn repdigit_scaling_leaves_correlation_unchanged() {
    // S_i(aa…a) = a^2 S_i(11…1); a series scaled by a^2 correlates identically.
    let a = DecadeSpec::new(w(7), 3, 100).unwrap();
    let b = DecadeSpec::new(w(7), 4, 100).unwrap();
    let req = RangeRequest::new(w(7), 1_000, 99_999).unwrap();
    let plain = compare_decades(&a, &b, generate_naive(&req)).unwrap();
    for digit in 2..=9u128 {
        let scaled = compare_decades(&a, &b, generate_naive(&req).map(|(n, v)| (n, v * digit * digit))).unwrap();
        assert!((plain.pearson_r - scaled.pearson_r).abs() <= 1e-12);
    }
}

#[test]
fn sequence_of_squares_bfile_round_trip() {
    let req = RangeRequest::new(w(1), 1, 10_000).unwrap();
    let records: Vec<BFileRecord> =
        generate_naive(&req).map(|(n, v)| BFileRecord::new(n as i64, v)).collect();
    let bytes = write_bfile(&records).unwrap();
    assert!(bytes.starts_with(b"1 1\n2 4\n3 9\n"));
    assert_eq!(parse_bfile(&bytes).unwrap(), records);
}
