use std::fmt;
use std::str::FromStr;

use num_traits::{Pow, ToPrimitive};

use crate::error::{Error, Result};
use crate::numeral::positional::check_base;
use crate::Value;

/// Default ceiling on how many digits [`UnaryStream::materialize`] will produce.
pub const DEFAULT_MATERIALIZATION_CAP: usize = 1 << 20;

/// A base-one stream, kept as its count of `1` digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryStream {
    ones_count: Value,
}

impl UnaryStream {
    pub fn ones_count(&self) -> &Value {
        &self.ones_count
    }

    /// Digit string of `ones_count` ones, refused above `cap` digits.
    pub fn materialize(&self, cap: usize) -> Result<String> {
        match self.ones_count.to_usize() {
            Some(len) if len <= cap => Ok("1".repeat(len)),
            _ => Err(Error::MaterializationLimit {
                len: self.ones_count.to_string(),
                cap,
            }),
        }
    }
}

/// Shows the materialized digits under the default cap, the count otherwise.
impl fmt::Display for UnaryStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.materialize(DEFAULT_MATERIALIZATION_CAP) {
            Ok(digits) => write!(f, "{digits}_u"),
            Err(_) => write!(f, "1{{{}}}_u", self.ones_count),
        }
    }
}

/// Parses `111_u`, `1{N}_u`, or an empty stream `_u`.
impl FromStr for UnaryStream {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.into(),
        };
        let body = s
            .trim()
            .strip_suffix("_u")
            .ok_or_else(|| parse_err("missing `_u` suffix"))?;
        if let Some(count) = body.strip_prefix("1{").and_then(|r| r.strip_suffix('}')) {
            let ones_count = count
                .parse()
                .map_err(|_| parse_err("count is not a decimal integer"))?;
            return Ok(UnaryStream { ones_count });
        }
        if !body.bytes().all(|b| b == b'1') {
            return Err(parse_err("unary digits must all be `1`"));
        }
        Ok(UnaryStream {
            ones_count: Value::from(body.len()),
        })
    }
}

pub fn unary_encode(value: &Value) -> UnaryStream {
    UnaryStream {
        ones_count: value.clone(),
    }
}

pub fn unary_decode(stream: &UnaryStream) -> Value {
    stream.ones_count.clone()
}

/// Unary digits needed to cover every `digit_count`-digit base-`base` value.
pub fn unary_length_for(base: u32, digit_count: u32) -> Result<Value> {
    check_base(base)?;
    if digit_count == 0 {
        return Err(Error::InvalidWidth("digit count must be at least 1".into()));
    }
    Ok(Pow::pow(Value::from(base), digit_count))
}
