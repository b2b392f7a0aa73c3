//! Latency, spike/digit counts and bandwidth utilization per encoding, plus
//! the unary-length table and the cross-scheme tradeoff table.
//!
//! All ratios are exact rationals. CSV column orders:
//!
//! * measure: `scheme,neurons,slots,latency,marks,utilization,max_error_impact,lossless`
//! * table1: `base,digits,unary_length`
//! * table1 examples: `numeral,value,unary_digits,bound`
//! * tradeoff: `scheme,max_latency,total_marks,max_error_impact,lossless`

use std::fmt;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::codecs::{
    rate_unary_encode, temporal_positional_encode, temporal_rate_encode, TemporalRateParams,
};
use crate::error::{Error, Result};
use crate::numeral::{
    digit_count, max_error_impact, unary_encode, unary_length_for, unary_positional_encode,
    PositionalNumeral,
};
use crate::scheme::Scheme;
use crate::Value;

/// A scheme with its radix (base, or stream length `n`) and optional width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EncodingSpec {
    pub scheme: Scheme,
    /// Base for positional/temporal, `n` for unary-positional/temporal-rate.
    /// Ignored by the unary schemes.
    pub radix: u32,
    /// Digits, streams or neurons; `None` picks the fewest that fit.
    pub k: Option<usize>,
    /// Rate-unary timeline length; `None` uses the value itself.
    pub slot_cap: Option<usize>,
}

impl EncodingSpec {
    pub fn new(scheme: Scheme, radix: u32) -> Self {
        Self {
            scheme,
            radix,
            k: None,
            slot_cap: None,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn uses_radix(&self) -> bool {
        !matches!(self.scheme, Scheme::Unary | Scheme::RateUnary)
    }

    /// Whether every representable value decodes exactly.
    pub fn is_lossless(&self) -> bool {
        self.scheme != Scheme::Temporal || self.radix == 2
    }

    fn resolve_k(&self, value: &Value) -> Result<usize> {
        let needed = digit_count(value, self.radix)?;
        match self.k {
            None => Ok(needed),
            Some(k) if k >= needed => Ok(k),
            Some(k) => Err(Error::Overflow(format!(
                "{value} needs {needed} base-{} digits, only {k} available",
                self.radix
            ))),
        }
    }
}

/// `temporal-rate-8`, `temporal-2`, `unary-positional-8`, `rate-unary`,
/// optionally followed by `:k` (e.g. `temporal-rate-8:3`).
impl fmt::Display for EncodingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.scheme.tag())?;
        if self.uses_radix() {
            write!(f, "-{}", self.radix)?;
        }
        if let Some(k) = self.k {
            write!(f, ":{k}")?;
        }
        Ok(())
    }
}

impl FromStr for EncodingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, k) = match s.split_once(':') {
            Some((head, k)) => (
                head,
                Some(k.parse::<usize>().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: "width after `:` is not an integer".into(),
                })?),
            ),
            None => (s, None),
        };
        for scheme in Scheme::ALL {
            let spec = if head == scheme.tag() {
                match scheme {
                    Scheme::Unary | Scheme::RateUnary => Some(EncodingSpec::new(scheme, 1)),
                    Scheme::Positional | Scheme::Temporal => Some(EncodingSpec::new(scheme, 2)),
                    _ => None,
                }
            } else {
                head.strip_prefix(scheme.tag())
                    .and_then(|rest| rest.strip_prefix('-'))
                    .and_then(|radix| radix.parse().ok())
                    .map(|radix| EncodingSpec::new(scheme, radix))
            };
            if let Some(mut spec) = spec {
                spec.k = k;
                return Ok(spec);
            }
        }
        Err(Error::UnknownScheme(s.to_string()))
    }
}

fn decimal<S: Serializer>(value: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

fn ratio<S: Serializer>(value: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", value.numer(), value.denom()))
}

fn display<S: Serializer, T: fmt::Display>(
    value: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// Measured shape and cost of one encoded value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodingMetrics {
    #[serde(serialize_with = "display")]
    pub spec: EncodingSpec,
    /// Neurons, or parallel digit lanes for the digit schemes.
    pub neuron_count: usize,
    /// Slots (or digits) per lane.
    #[serde(serialize_with = "decimal")]
    pub slot_count: Value,
    /// Slots until the encoding is complete.
    #[serde(serialize_with = "decimal")]
    pub latency: Value,
    /// Spikes, or `1` digits for the digit schemes.
    #[serde(serialize_with = "decimal")]
    pub total_marks: Value,
    /// `total_marks / (neuron_count * slot_count)`, 0 for an empty capacity.
    #[serde(serialize_with = "ratio")]
    pub utilization: BigRational,
    /// Largest change a single corrupted digit or spike insert/delete can cause.
    #[serde(serialize_with = "decimal")]
    pub max_single_error_impact: Value,
    pub lossless: bool,
}

fn utilization(marks: &Value, lanes: usize, slots: &Value) -> BigRational {
    let capacity = slots * lanes;
    if capacity.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(marks.clone()), BigInt::from(capacity))
    }
}

/// Encodes `value` under `spec` and measures the artifact.
pub fn measure(value: &Value, spec: &EncodingSpec) -> Result<EncodingMetrics> {
    let radix = spec.radix;
    let pow = |exp: usize| -> Value { Pow::pow(Value::from(radix), exp) };
    let (neuron_count, slot_count, latency, total_marks, max_single_error_impact) =
        match spec.scheme {
            Scheme::Positional => {
                let k = spec.resolve_k(value)?;
                let numeral = PositionalNumeral::encode(value, radix, Some(k))?;
                let nonzero = numeral.digits().iter().filter(|&&d| d != 0).count();
                let worst = pow(k - 1) * (radix - 1);
                (
                    1,
                    Value::from(k),
                    Value::from(k),
                    Value::from(nonzero),
                    worst,
                )
            }
            Scheme::Unary => {
                let stream = unary_encode(value);
                let len = stream.ones_count().clone();
                (1, len.clone(), len.clone(), len, Value::one())
            }
            Scheme::UnaryPositional => {
                let k = spec.resolve_k(value)?;
                let word = unary_positional_encode(value, radix as usize, Some(k))?;
                let worst = max_error_impact(Scheme::UnaryPositional, word.n(), k)?;
                let n = Value::from(word.n());
                (k, n.clone(), n, Value::from(word.total_ones()), worst)
            }
            Scheme::RateUnary => {
                let cap = match spec.slot_cap {
                    Some(cap) => cap,
                    None => value.to_usize().ok_or_else(|| {
                        Error::Overflow(format!("{value} spikes do not fit a rate-unary timeline"))
                    })?,
                };
                let raster = rate_unary_encode(value, cap)?;
                let spikes = Value::from(raster.total_spikes());
                (1, Value::from(cap), spikes.clone(), spikes, Value::one())
            }
            Scheme::Temporal => {
                let k = spec.resolve_k(value)?;
                let raster = temporal_positional_encode(value, radix, k)?;
                (
                    k,
                    Value::from(k),
                    Value::from(k),
                    Value::from(raster.total_spikes()),
                    pow(k - 1),
                )
            }
            Scheme::TemporalRate => {
                let k = spec.resolve_k(value)?;
                let params = TemporalRateParams::new(radix as usize, k)?;
                let raster = temporal_rate_encode(value, params)?;
                let slots = Value::from(params.timeline());
                (
                    k,
                    slots.clone(),
                    slots,
                    Value::from(raster.total_spikes()),
                    pow(k - 1),
                )
            }
        };
    let resolved_k = match spec.scheme {
        Scheme::Unary | Scheme::RateUnary => None,
        Scheme::Positional => Some(spec.resolve_k(value)?),
        _ => Some(neuron_count),
    };
    Ok(EncodingMetrics {
        spec: EncodingSpec {
            k: resolved_k,
            ..*spec
        },
        utilization: utilization(&total_marks, neuron_count, &slot_count),
        neuron_count,
        slot_count,
        latency,
        total_marks,
        max_single_error_impact,
        lossless: spec.is_lossless(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub base: u32,
    pub digits: u32,
    /// `base^digits`, the unary length that covers every such numeral.
    #[serde(serialize_with = "decimal")]
    pub unary_length: Value,
}

/// Unary length needed for every `digits`-digit numeral, per base.
pub fn table1_report(bases: &[u32], digits: RangeInclusive<u32>) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for &base in bases {
        for d in digits.clone() {
            rows.push(Table1Row {
                base,
                digits: d,
                unary_length: unary_length_for(base, d)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Example {
    #[serde(serialize_with = "display")]
    pub numeral: PositionalNumeral,
    #[serde(serialize_with = "decimal")]
    pub value: Value,
    /// Digits of the unary stream for this particular value.
    #[serde(serialize_with = "decimal")]
    pub unary_digits: Value,
    /// `base^width`, the row's bound.
    #[serde(serialize_with = "decimal")]
    pub bound: Value,
}

/// The two worked rows: `1101_2` and `9876_10`.
pub fn table1_examples() -> Vec<Table1Example> {
    ["1101_2", "9876_10"]
        .iter()
        .map(|text| {
            let numeral: PositionalNumeral = text.parse().expect("fixed numerals parse");
            let value = numeral.value();
            Table1Example {
                unary_digits: unary_encode(&value).ones_count().clone(),
                bound: unary_length_for(numeral.base(), numeral.width() as u32)
                    .expect("valid base"),
                numeral,
                value,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeoffRow {
    #[serde(serialize_with = "display")]
    pub spec: EncodingSpec,
    #[serde(serialize_with = "decimal")]
    pub max_latency: Value,
    #[serde(serialize_with = "decimal")]
    pub total_marks: Value,
    #[serde(serialize_with = "decimal")]
    pub max_error_impact: Value,
    pub lossless: bool,
}

/// One row per spec, in the given order. A spec without a width is sized
/// for the largest value so every value shares one parameter set.
pub fn tradeoff_report(values: &[Value], specs: &[EncodingSpec]) -> Result<Vec<TradeoffRow>> {
    let Some(largest) = values.iter().max() else {
        return Ok(Vec::new());
    };
    specs
        .iter()
        .map(|spec| {
            let mut spec = *spec;
            if spec.uses_radix() && spec.k.is_none() {
                spec.k = Some(spec.resolve_k(largest)?);
            }
            if spec.scheme == Scheme::RateUnary && spec.slot_cap.is_none() {
                spec.slot_cap = Some(largest.to_usize().ok_or_else(|| {
                    Error::Overflow(format!("{largest} spikes do not fit a rate-unary timeline"))
                })?);
            }
            let mut row = TradeoffRow {
                spec,
                max_latency: Value::zero(),
                total_marks: Value::zero(),
                max_error_impact: Value::zero(),
                lossless: spec.is_lossless(),
            };
            for value in values {
                let m = measure(value, &spec)?;
                row.max_latency = row.max_latency.max(m.latency);
                row.total_marks += m.total_marks;
                row.max_error_impact = row.max_error_impact.max(m.max_single_error_impact);
            }
            Ok(row)
        })
        .collect()
}

pub fn measure_csv(rows: &[EncodingMetrics]) -> String {
    let mut out =
        String::from("scheme,neurons,slots,latency,marks,utilization,max_error_impact,lossless\n");
    for m in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}/{},{},{}",
            m.spec,
            m.neuron_count,
            m.slot_count,
            m.latency,
            m.total_marks,
            m.utilization.numer(),
            m.utilization.denom(),
            m.max_single_error_impact,
            m.lossless
        )
        .unwrap();
    }
    out
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("base,digits,unary_length\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.base, r.digits, r.unary_length).unwrap();
    }
    out
}

pub fn table1_examples_csv(rows: &[Table1Example]) -> String {
    let mut out = String::from("numeral,value,unary_digits,bound\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.numeral, r.value, r.unary_digits, r.bound
        )
        .unwrap();
    }
    out
}

pub fn tradeoff_csv(rows: &[TradeoffRow]) -> String {
    let mut out = String::from("scheme,max_latency,total_marks,max_error_impact,lossless\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.spec, r.max_latency, r.total_marks, r.max_error_impact, r.lossless
        )
        .unwrap();
    }
    out
}
