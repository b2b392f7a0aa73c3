use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeral::positional::{digit_count, PositionalNumeral};
use crate::Value;

/// `k` unary streams of `n` binary digits each; stream `i` weighs `n^i`.
///
/// Streams are stored in display order, highest weight first, and every
/// public stream index is the weight exponent `i`. Within a stream, bit 0 is
/// the leftmost character.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnaryPositionalWord {
    n: usize,
    streams: Vec<Vec<bool>>,
}

impl UnaryPositionalWord {
    /// Builds a word from streams listed highest weight first.
    pub fn new(n: usize, streams: Vec<Vec<bool>>) -> Result<Self> {
        check_stream_len(n)?;
        if streams.is_empty() {
            return Err(Error::InvalidWidth(
                "a word needs at least one stream".into(),
            ));
        }
        let k = streams.len();
        if let Some((pos, s)) = streams.iter().enumerate().find(|(_, s)| s.len() != n) {
            return Err(Error::LengthMismatch {
                stream: k - 1 - pos,
                expected: n,
                found: s.len(),
            });
        }
        Ok(Self { n, streams })
    }

    /// Stream length, which is also the base.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of streams.
    pub fn k(&self) -> usize {
        self.streams.len()
    }

    /// Binary digits consumed per stream, `log2(n)`.
    pub fn bits_per_stream(&self) -> usize {
        self.n.trailing_zeros() as usize
    }

    /// The stream weighted by `n^index`.
    pub fn stream(&self, index: usize) -> Option<&[bool]> {
        let k = self.k();
        (index < k).then(|| self.streams[k - 1 - index].as_slice())
    }

    /// Streams in display order, highest weight first.
    pub fn streams(&self) -> &[Vec<bool>] {
        &self.streams
    }

    /// Per-stream popcounts indexed by weight exponent.
    pub fn popcounts(&self) -> Vec<usize> {
        self.streams
            .iter()
            .rev()
            .map(|s| s.iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn total_ones(&self) -> usize {
        self.popcounts().iter().sum()
    }

    /// Weighted popcount sum. Bit placement inside a stream is irrelevant.
    pub fn value(&self) -> Value {
        let n = BigUint::from(self.n);
        self.streams.iter().fold(BigUint::zero(), |acc, s| {
            acc * &n + BigUint::from(s.iter().filter(|&&b| b).count())
        })
    }

    /// True when every stream has the expanding-group fill with the reserved zero.
    pub fn is_canonical(&self) -> bool {
        self.streams.iter().all(|s| {
            let ones = s.iter().filter(|&&b| b).count();
            ones < self.n && *s == canonical_stream(ones, self.n)
        })
    }

    pub(crate) fn with_bit_flipped(&self, stream: usize, bit: usize) -> Result<Self> {
        let k = self.k();
        if stream >= k || bit >= self.n {
            return Err(Error::InvalidEvent(format!(
                "digit ({stream}, {bit}) outside a word of {k} streams of {} digits",
                self.n
            )));
        }
        let mut streams = self.streams.clone();
        let b = &mut streams[k - 1 - stream][bit];
        *b = !*b;
        Ok(Self { n: self.n, streams })
    }
}

fn check_stream_len(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        Err(Error::InvalidBase(n as u64))
    } else {
        Ok(())
    }
}

/// One canonical stream holding `ones` (< n): the reserved zero slot, then
/// blocks of 2^(m-1) .. 2^0 digits, each filled with the matching bit of `ones`.
fn canonical_stream(ones: usize, n: usize) -> Vec<bool> {
    let m = n.trailing_zeros();
    let mut stream = Vec::with_capacity(n);
    stream.push(false);
    for j in (0..m).rev() {
        let bit = (ones >> j) & 1 == 1;
        stream.extend(std::iter::repeat_n(bit, 1 << j));
    }
    stream
}

/// Converts a binary numeral by expanding each group of `log2(n)` bits into
/// one stream. The input is left-padded with zeros to a whole number of groups.
pub fn binary_to_unary_positional(
    bits: &PositionalNumeral,
    n: usize,
) -> Result<UnaryPositionalWord> {
    check_stream_len(n)?;
    if bits.base() != 2 {
        return Err(Error::InvalidBase(bits.base().into()));
    }
    let m = n.trailing_zeros() as usize;
    let digits = bits.digits();
    let padded_len = digits.len().div_ceil(m) * m;
    let mut padded = vec![0u32; padded_len - digits.len()];
    padded.extend_from_slice(digits);

    let streams = padded
        .chunks(m)
        .map(|group| {
            let ones = group.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
            canonical_stream(ones, n)
        })
        .collect();
    UnaryPositionalWord::new(n, streams)
}

pub fn unary_positional_decode(word: &UnaryPositionalWord) -> Value {
    word.value()
}

/// Encodes `value` in `k` streams of length `n`; `k` defaults to the fewest that fit.
pub fn unary_positional_encode(
    value: &Value,
    n: usize,
    k: Option<usize>,
) -> Result<UnaryPositionalWord> {
    check_stream_len(n)?;
    let needed = digit_count(value, n as u32)?;
    let k = match k {
        Some(0) => return Err(Error::InvalidWidth("k must be at least 1".into())),
        Some(k) if k < needed => {
            return Err(Error::Overflow(format!(
                "{value} needs {needed} streams of length {n}, only {k} available"
            )))
        }
        Some(k) => k,
        None => needed,
    };
    let m = n.trailing_zeros() as usize;
    let bits = PositionalNumeral::encode(value, 2, Some(k * m))?;
    binary_to_unary_positional(&bits, n)
}

/// Rewrites a word into the canonical fill pattern without changing its value.
pub fn canonicalize(word: &UnaryPositionalWord) -> Result<UnaryPositionalWord> {
    let n = word.n();
    let streams = word
        .streams()
        .iter()
        .enumerate()
        .map(|(pos, s)| {
            let ones = s.iter().filter(|&&b| b).count();
            if ones >= n {
                Err(Error::Overflow(format!(
                    "stream {} holds {ones} ones; a canonical stream holds at most {}",
                    word.k() - 1 - pos,
                    n - 1
                )))
            } else {
                Ok(canonical_stream(ones, n))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    UnaryPositionalWord::new(n, streams)
}

/// `01111001 01111000 00000111_u8`
impl fmt::Display for UnaryPositionalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, stream) in self.streams.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for &b in stream {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        write!(f, "_u{}", self.n)
    }
}

impl FromStr for UnaryPositionalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (body, n) = s
            .trim()
            .rsplit_once("_u")
            .ok_or_else(|| parse_err("expected `<streams>_u<n>`"))?;
        let n: usize = n
            .parse()
            .map_err(|_| parse_err("stream length is not an integer"))?;
        let streams = body
            .split_whitespace()
            .map(|stream| {
                stream
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(parse_err("streams may only contain 0 and 1")),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, streams)
    }
}
