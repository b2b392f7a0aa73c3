//! Exhaustive and sampled invariants of the digit-level codecs.

use num_traits::{Pow, ToPrimitive};
use proptest::prelude::*;
use unipos::error_lab::{ErrorEvent, Inject};
use unipos::numeral::{
    binary_to_unary_positional, canonicalize, max_error_impact, positional_decode,
    positional_encode, unary_decode, unary_encode, unary_length_for, unary_positional_decode,
    PositionalNumeral, UnaryPositionalWord,
};
use unipos::{Error, Scheme, Value};

const STREAM_LENGTHS: [usize; 4] = [2, 4, 8, 16];

fn log2(n: usize) -> usize {
    n.trailing_zeros() as usize
}

/// Independent reference: value of a word as the sum of its set digits'
/// weights, walking every character of the text form.
fn oracle_word_value(text: &str) -> u64 {
    let (body, n) = text.rsplit_once("_u").unwrap();
    let n: u64 = n.parse().unwrap();
    body.split(' ')
        .rev()
        .enumerate()
        .map(|(i, stream)| stream.chars().filter(|&c| c == '1').count() as u64 * n.pow(i as u32))
        .sum()
}

fn convert(v: u64, n: usize, k: usize) -> UnaryPositionalWord {
    let bits = positional_encode(&Value::from(v), 2, Some(k * log2(n))).unwrap();
    binary_to_unary_positional(&bits, n).unwrap()
}

#[test]
fn unary_positional_roundtrip_exhaustive() {
    for n in STREAM_LENGTHS {
        for k in 1..=3 {
            let space = (n as u64).pow(k as u32);
            assert!(space <= 4096);
            for v in 0..space {
                let word = convert(v, n, k);
                assert_eq!(word.k(), k);
                assert!(word.is_canonical());
                assert_eq!(
                    unary_positional_decode(&word),
                    Value::from(v),
                    "n={n} k={k}"
                );
                assert_eq!(oracle_word_value(&word.to_string()), v);
            }
        }
    }
}

#[test]
fn nine_bit_values_base_eight() {
    for v in 0..512u64 {
        let bits = positional_encode(&Value::from(v), 2, Some(9)).unwrap();
        let word = binary_to_unary_positional(&bits, 8).unwrap();
        assert_eq!(word.value(), positional_decode(2, bits.digits()).unwrap());
    }
}

#[test]
fn canonicalize_matches_conversion_path() {
    let word: UnaryPositionalWord = "10101010_u8".parse().unwrap();
    // oracle: decode, re-encode in binary, convert
    let expected = convert(word.value().to_u64().unwrap(), 8, 1);
    assert_eq!(canonicalize(&word).unwrap(), expected);
    assert_eq!(expected.to_string(), "01111000_u8");
}

#[test]
fn single_digit_flip_changes_by_stream_weight() {
    for n in STREAM_LENGTHS {
        for k in 1..=3 {
            let bound = max_error_impact(Scheme::UnaryPositional, n, k).unwrap();
            for v in 0..(n as u64).pow(k as u32) {
                let word = convert(v, n, k);
                for stream in 0..k {
                    let weight: Value = Pow::pow(Value::from(n), stream);
                    assert!(weight <= bound);
                    for bit in 0..n {
                        let hit = word.inject(&ErrorEvent::DigitFlip { stream, bit }).unwrap();
                        let after = hit.value();
                        let delta = if after > Value::from(v) {
                            after - v
                        } else {
                            Value::from(v) - after
                        };
                        assert_eq!(delta, weight, "n={n} k={k} v={v} stream={stream} bit={bit}");
                    }
                }
            }
        }
    }
}

#[test]
fn single_bit_flip_changes_by_position_weight() {
    for (n, k) in [(2usize, 3usize), (8, 3), (16, 2)] {
        let width = log2(n) * k;
        let bound = max_error_impact(Scheme::Positional, n, k).unwrap();
        for v in 0..(1u64 << width) {
            let bits = positional_encode(&Value::from(v), 2, Some(width)).unwrap();
            for position in 0..width {
                let hit = bits
                    .inject(&ErrorEvent::DigitFlip {
                        stream: 0,
                        bit: position,
                    })
                    .unwrap();
                let delta = hit.value().to_u64().unwrap().abs_diff(v);
                assert_eq!(delta, 1 << position);
                assert!(Value::from(delta) <= bound);
            }
        }
    }
}

#[test]
fn table_length_law() {
    for base in [2u32, 3, 10, 16] {
        for d in 1..=20u32 {
            let here = unary_length_for(base, d).unwrap();
            let next = unary_length_for(base, d + 1).unwrap();
            assert_eq!(next, &here * base);
        }
    }
}

#[test]
fn canonical_overflow_cases() {
    let word: UnaryPositionalWord = "01111000 11111111_u8".parse().unwrap();
    assert!(matches!(canonicalize(&word), Err(Error::Overflow(_))));
}

fn any_base() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(8), Just(10), Just(16)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn positional_roundtrip(v in any::<u64>(), base in any_base(), pad in 0usize..4) {
        let value = Value::from(v);
        let numeral = positional_encode(&value, base, None).unwrap();
        prop_assert_eq!(numeral.value(), value.clone());
        prop_assert!(numeral.digits()[0] != 0 || numeral.width() == 1);
        let padded = positional_encode(&value, base, Some(numeral.width() + pad)).unwrap();
        prop_assert_eq!(padded.width(), numeral.width() + pad);
        prop_assert_eq!(padded.value(), value.clone());
        let reparsed: PositionalNumeral = numeral.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, numeral);
    }

    #[test]
    fn unary_roundtrip(v in any::<u64>()) {
        let value = Value::from(v);
        prop_assert_eq!(unary_decode(&unary_encode(&value)), value);
    }

    #[test]
    fn unary_length_matches_materialized(v in 0u32..5000) {
        let digits = unary_encode(&Value::from(v)).materialize(1 << 20).unwrap();
        prop_assert_eq!(digits.len(), v as usize);
    }

    #[test]
    fn unary_positional_roundtrip_sampled(
        n in prop_oneof![Just(2usize), Just(4), Just(8), Just(16), Just(32)],
        k in 1usize..=6,
        seed in any::<u64>(),
    ) {
        let space = (n as u64).pow(k as u32);
        let v = seed % space;
        prop_assert_eq!(convert(v, n, k).value(), Value::from(v));
    }

    #[test]
    fn decode_ignores_placement_within_streams(
        streams in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 8), 1..4),
        rotations in proptest::collection::vec(0usize..8, 4),
        reversed in any::<bool>(),
    ) {
        let word = UnaryPositionalWord::new(8, streams.clone()).unwrap();
        let permuted: Vec<Vec<bool>> = streams
            .iter()
            .zip(&rotations)
            .map(|(s, &r)| {
                let mut s = s.clone();
                s.rotate_left(r);
                if reversed {
                    s.reverse();
                }
                s
            })
            .collect();
        let permuted = UnaryPositionalWord::new(8, permuted).unwrap();
        prop_assert_eq!(permuted.value(), word.value());
    }

    #[test]
    fn canonicalize_preserves_value(
        counts in proptest::collection::vec(0usize..8, 1..4),
        shuffle_seed in any::<u64>(),
    ) {
        // build a noncanonical word with the given popcounts
        let streams: Vec<Vec<bool>> = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut s: Vec<bool> = (0..8).map(|j| j < c).collect();
                s.rotate_right((shuffle_seed as usize + i) % 8);
                s
            })
            .collect();
        let word = UnaryPositionalWord::new(8, streams).unwrap();
        let canonical = canonicalize(&word).unwrap();
        prop_assert!(canonical.is_canonical());
        prop_assert_eq!(canonical.value(), word.value());
        prop_assert_eq!(canonicalize(&canonical).unwrap(), canonical.clone());
        prop_assert_eq!(canonical, convert(word.value().to_u64().unwrap(), 8, counts.len()));
    }
}
