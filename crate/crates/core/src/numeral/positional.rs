use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Value;

/// A base-`b` numeral, digits stored most-significant first.
///
/// Zero is always at least the single digit `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionalNumeral {
    base: u32,
    digits: Vec<u32>,
}

impl PositionalNumeral {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        if digits.is_empty() {
            return Err(Error::InvalidWidth(
                "a numeral needs at least one digit".into(),
            ));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange {
                digit: digit.into(),
                base,
            });
        }
        Ok(Self { base, digits })
    }

    /// Writes `value` in `base`, left-padding with zeros up to `min_width`.
    pub fn encode(value: &Value, base: u32, min_width: Option<usize>) -> Result<Self> {
        check_base(base)?;
        let mut digits = to_digits(value, base);
        let width = min_width.unwrap_or(0);
        if digits.len() < width {
            let mut padded = vec![0; width - digits.len()];
            padded.append(&mut digits);
            digits = padded;
        }
        Ok(Self { base, digits })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits, most-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// The digit weighted by `base^position`.
    pub fn digit_at(&self, position: usize) -> Option<u32> {
        let len = self.digits.len();
        (position < len).then(|| self.digits[len - 1 - position])
    }

    /// Sum of `digit_i * base^i`.
    pub fn value(&self) -> Value {
        let base = BigUint::from(self.base);
        self.digits
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * &base + BigUint::from(d))
    }

    pub(crate) fn with_digits(&self, digits: Vec<u32>) -> Result<Self> {
        Self::new(self.base, digits)
    }
}

pub fn positional_decode(base: u32, digits: &[u32]) -> Result<Value> {
    Ok(PositionalNumeral::new(base, digits.to_vec())?.value())
}

pub fn positional_encode(
    value: &Value,
    base: u32,
    min_width: Option<usize>,
) -> Result<PositionalNumeral> {
    PositionalNumeral::encode(value, base, min_width)
}

/// Number of base-`base` digits needed to write `value` (1 for zero).
pub fn digit_count(value: &Value, base: u32) -> Result<usize> {
    check_base(base)?;
    Ok(to_digits(value, base).len())
}

pub(crate) fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base.into()))
    } else {
        Ok(())
    }
}

fn to_digits(value: &Value, base: u32) -> Vec<u32> {
    if value.is_zero() {
        return vec![0];
    }
    if base <= 256 {
        return value.to_radix_be(base).into_iter().map(u32::from).collect();
    }
    let radix = BigUint::from(base);
    let mut rest = value.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(&radix);
        digits.push(rem.to_u32().expect("remainder below a u32 base"));
        rest = quot;
    }
    digits.reverse();
    digits
}

const DIGIT_CHARS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// `101100011_2` style. Bases above 36 write digits in decimal separated by dots.
impl fmt::Display for PositionalNumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 36 {
            for &d in &self.digits {
                write!(f, "{}", DIGIT_CHARS[d as usize] as char)?;
            }
        } else {
            for (i, d) in self.digits.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{d}")?;
            }
        }
        write!(f, "_{}", self.base)
    }
}

impl FromStr for PositionalNumeral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (body, base) = s
            .trim()
            .rsplit_once('_')
            .ok_or_else(|| parse_err("expected `<digits>_<base>`"))?;
        let base: u32 = base
            .parse()
            .map_err(|_| parse_err("base is not an integer"))?;
        check_base(base)?;
        if body.is_empty() {
            return Err(parse_err("no digits"));
        }
        let digits = if body.contains('.') || base > 36 {
            body.split('.')
                .map(|d| d.parse::<u32>().map_err(|_| parse_err("bad digit")))
                .collect::<Result<Vec<_>>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(36)
                        .ok_or_else(|| parse_err("bad digit character"))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(base, digits)
    }
}

/// Parses a value written either in decimal (`355`) or as `<digits>_<base>`.
pub fn parse_value(s: &str) -> Result<Value> {
    let s = s.trim();
    if s.contains('_') {
        return Ok(s.parse::<PositionalNumeral>()?.value());
    }
    s.parse::<BigUint>().map_err(|_| Error::Parse {
        input: s.to_string(),
        reason: "expected a nonnegative decimal integer or `<digits>_<base>`".into(),
    })
}
