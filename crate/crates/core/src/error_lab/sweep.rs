//! Seeded single-fault sweeps.
//!
//! A sweep walks a sequence of *draws*. Each draw picks one value (in order
//! for exhaustive sweeps, at random otherwise), encodes it, and runs one
//! trial per selected event: inject, decode, record `|Δ|`. Randomness comes
//! from ChaCha8 keyed by `SeedableRng::seed_from_u64(seed)`, with the draw
//! index selecting the 64-bit stream id, so a draw's outcome does not depend
//! on which worker runs it and the aggregate is identical for any job count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::codecs::{
    rate_unary_decode, rate_unary_encode, temporal_positional_decode, temporal_positional_encode,
    temporal_rate_decode, temporal_rate_encode, CountPolicy, DecodeMode, TemporalRateParams,
};
use crate::error::{Error, Result};
use crate::error_lab::event::{impact, ErrorEvent, ErrorModel, Inject};
use crate::numeral::{
    parse_value, unary_positional_encode, PositionalNumeral, UnaryPositionalWord,
};
use crate::scheme::Scheme;
use crate::spike::SpikeRaster;
use crate::Value;

/// Identifies the random source in every report.
pub const GENERATOR: &str =
    "chacha8 (rand_chacha 0.3): key = seed_from_u64(seed), stream = draw_index";

/// Largest value space an exhaustive sweep will walk.
pub const MAX_EXHAUSTIVE_VALUES: u64 = 1 << 24;

/// Scheme parameters; which ones are required depends on the scheme.
///
/// | scheme           | required         |
/// |------------------|------------------|
/// | unary-positional | `n`, `k`         |
/// | positional       | `k` (bit width), `base` must be 2 if given |
/// | rate-unary       | `slot_cap`       |
/// | temporal         | `base`, `k`      |
/// | temporal-rate    | `n`, `k`         |
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub base: Option<u32>,
    pub slot_cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueSource {
    /// Every representable value, ascending.
    Exhaustive,
    /// `count` values drawn uniformly from the representable range.
    Sampled(u64),
    /// The given values, in order.
    Listed(Vec<Value>),
}

impl fmt::Display for ValueSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSource::Exhaustive => f.write_str("exhaustive"),
            ValueSource::Sampled(count) => write!(f, "sample:{count}"),
            ValueSource::Listed(values) => {
                f.write_str("list:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ValueSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(ValueSource::Exhaustive);
        }
        if let Some(count) = s.strip_prefix("sample:") {
            return count
                .parse()
                .map(ValueSource::Sampled)
                .map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: "sample count is not an integer".into(),
                });
        }
        let list = s.strip_prefix("list:").unwrap_or(s);
        list.split(',')
            .map(parse_value)
            .collect::<Result<Vec<_>>>()
            .map(ValueSource::Listed)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EventSelection {
    /// One trial per valid event.
    #[default]
    Exhaustive,
    /// One uniformly drawn valid event per value.
    Sampled,
}

impl fmt::Display for EventSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventSelection::Exhaustive => "exhaustive",
            EventSelection::Sampled => "sampled",
        })
    }
}

impl FromStr for EventSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(EventSelection::Exhaustive),
            "sampled" | "sample" => Ok(EventSelection::Sampled),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `exhaustive` or `sampled`".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub scheme: Scheme,
    pub params: SweepParams,
    pub values: ValueSource,
    pub events: EventSelection,
    pub model: ErrorModel,
    /// Decode mode for the temporal schemes.
    pub mode: DecodeMode,
    /// Required whenever values or events are sampled.
    pub seed: Option<u64>,
    /// Worker threads; 0 lets the pool decide. Never affects the report.
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(scheme: Scheme, params: SweepParams, model: ErrorModel) -> Self {
        Self {
            scheme,
            params,
            values: ValueSource::Exhaustive,
            events: EventSelection::Exhaustive,
            model,
            mode: DecodeMode::FixedSchedule,
            seed: None,
            jobs: 0,
        }
    }
}

/// One injected fault and its measured effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub value: Value,
    pub event: ErrorEvent,
    pub decoded: Value,
    pub impact: BigInt,
    /// The perturbed artifact fails strict temporal-rate decoding.
    pub strict_rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub scheme: Scheme,
    pub params: serde_json::Value,
    pub trials: u64,
    pub seed: Option<u64>,
    pub max_abs_impact: Value,
    pub mean_abs_impact: BigRational,
    /// `|Δ|` to number of trials.
    pub histogram: BTreeMap<Value, u64>,
    pub strict_rejections: u64,
    /// Draws whose artifact admitted no event of the model, e.g. deleting
    /// from an empty raster.
    pub draws_without_events: u64,
}

impl SweepReport {
    /// JSON with keys in a fixed order. Big integers are decimal strings
    /// and the mean is an exact `num/den` string.
    pub fn to_json(&self) -> serde_json::Value {
        let histogram: serde_json::Map<String, serde_json::Value> = self
            .histogram
            .iter()
            .map(|(delta, count)| (delta.to_string(), json!(count)))
            .collect();
        json!({
            "scheme": self.scheme.tag(),
            "params": self.params,
            "trials": self.trials,
            "seed": self.seed,
            "max_abs_impact": self.max_abs_impact.to_string(),
            "mean_abs_impact": format!("{}/{}", self.mean_abs_impact.numer(), self.mean_abs_impact.denom()),
            "histogram": histogram,
            "strict_rejections": self.strict_rejections,
            "draws_without_events": self.draws_without_events,
            "generator": GENERATOR,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serialization is infallible")
    }
}

#[derive(Debug, Clone)]
enum Plan {
    UnaryPositional { n: usize, k: usize },
    Binary { width: usize },
    RateUnary { slot_cap: usize },
    Temporal { base: u32, k: usize },
    TemporalRate(TemporalRateParams),
}

enum Artifact {
    Word(UnaryPositionalWord),
    Numeral(PositionalNumeral),
    Raster(SpikeRaster),
}

fn required<T>(value: Option<T>, name: &str, scheme: Scheme) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParams(format!("`{scheme}` sweeps need `{name}`")))
}

fn positive(k: usize) -> Result<usize> {
    if k == 0 {
        Err(Error::InvalidParams("k must be at least 1".into()))
    } else {
        Ok(k)
    }
}

impl Plan {
    fn new(config: &SweepConfig) -> Result<Self> {
        let p = &config.params;
        let scheme = config.scheme;
        let plan = match scheme {
            Scheme::UnaryPositional => {
                let n = required(p.n, "n", scheme)?;
                TemporalRateParams::new(n, 1).map_err(|e| Error::InvalidParams(e.to_string()))?;
                Plan::UnaryPositional {
                    n,
                    k: positive(required(p.k, "k", scheme)?)?,
                }
            }
            Scheme::Positional => {
                if p.base.is_some_and(|b| b != 2) {
                    return Err(Error::InvalidParams(
                        "positional sweeps flip binary digits; base must be 2".into(),
                    ));
                }
                Plan::Binary {
                    width: positive(required(p.k, "k", scheme)?)?,
                }
            }
            Scheme::RateUnary => Plan::RateUnary {
                slot_cap: required(p.slot_cap, "slot_cap", scheme)?,
            },
            Scheme::Temporal => {
                let base = required(p.base, "base", scheme)?;
                if base < 2 {
                    return Err(Error::InvalidParams(format!("invalid base {base}")));
                }
                Plan::Temporal {
                    base,
                    k: positive(required(p.k, "k", scheme)?)?,
                }
            }
            Scheme::TemporalRate => Plan::TemporalRate(
                TemporalRateParams::new(required(p.n, "n", scheme)?, required(p.k, "k", scheme)?)
                    .map_err(|e| Error::InvalidParams(e.to_string()))?,
            ),
            Scheme::Unary => {
                return Err(Error::InvalidParams(
                    "unary streams are swept through `rate-unary`".into(),
                ))
            }
        };
        if scheme.is_spiking() != config.model.targets_spikes() {
            return Err(Error::InvalidParams(format!(
                "error model `{}` does not apply to `{scheme}`",
                config.model.tag()
            )));
        }
        Ok(plan)
    }

    /// Exclusive upper bound of the value space.
    fn capacity(&self) -> Value {
        match *self {
            Plan::UnaryPositional { n, k } => Pow::pow(Value::from(n), k),
            Plan::Binary { width } => Value::from(1u8) << width,
            Plan::RateUnary { slot_cap } => Value::from(slot_cap) + 1u8,
            Plan::Temporal { base, k } => Pow::pow(Value::from(base), k),
            Plan::TemporalRate(params) => params.capacity(),
        }
    }

    fn params_json(&self, config: &SweepConfig) -> serde_json::Value {
        let mut params = match *self {
            Plan::UnaryPositional { n, k } => json!({ "n": n, "k": k }),
            Plan::Binary { width } => json!({ "base": 2, "k": width }),
            Plan::RateUnary { slot_cap } => json!({ "slot_cap": slot_cap }),
            Plan::Temporal { base, k } => json!({ "base": base, "k": k }),
            Plan::TemporalRate(p) => json!({ "n": p.n(), "k": p.k() }),
        };
        let map = params.as_object_mut().expect("params are an object");
        map.insert("errors".into(), json!(config.model.tag()));
        map.insert("values".into(), json!(config.values.to_string()));
        map.insert("events".into(), json!(config.events.to_string()));
        if matches!(self, Plan::Temporal { .. } | Plan::TemporalRate(_)) {
            let mode = match config.mode {
                DecodeMode::FixedSchedule => "fixed",
                DecodeMode::FirstSpikeOrder => "order",
            };
            map.insert("mode".into(), json!(mode));
        }
        params
    }

    fn encode(&self, value: &Value) -> Result<Artifact> {
        Ok(match *self {
            Plan::UnaryPositional { n, k } => {
                Artifact::Word(unary_positional_encode(value, n, Some(k))?)
            }
            Plan::Binary { width } => {
                Artifact::Numeral(PositionalNumeral::encode(value, 2, Some(width))?)
            }
            Plan::RateUnary { slot_cap } => Artifact::Raster(rate_unary_encode(value, slot_cap)?),
            Plan::Temporal { base, k } => {
                Artifact::Raster(temporal_positional_encode(value, base, k)?)
            }
            Plan::TemporalRate(params) => Artifact::Raster(temporal_rate_encode(value, params)?),
        })
    }

    /// Decoded value and whether strict decoding would have refused it.
    fn decode(&self, artifact: &Artifact, mode: DecodeMode) -> Result<(Value, bool)> {
        match (self, artifact) {
            (Plan::UnaryPositional { .. }, Artifact::Word(w)) => Ok((w.value(), false)),
            (Plan::Binary { .. }, Artifact::Numeral(b)) => Ok((b.value(), false)),
            (Plan::RateUnary { .. }, Artifact::Raster(r)) => Ok((rate_unary_decode(r)?, false)),
            (Plan::Temporal { base, .. }, Artifact::Raster(r)) => {
                Ok((temporal_positional_decode(r, *base, mode)?, false))
            }
            (Plan::TemporalRate(params), Artifact::Raster(r)) => {
                let value = temporal_rate_decode(r, *params, mode, CountPolicy::Lenient)?;
                let rejected = matches!(
                    temporal_rate_decode(r, *params, mode, CountPolicy::Strict),
                    Err(Error::CountOverflow { .. })
                );
                Ok((value, rejected))
            }
            _ => unreachable!("artifact kind always follows the plan"),
        }
    }
}

impl Artifact {
    fn valid_events(&self, model: ErrorModel) -> Vec<ErrorEvent> {
        match self {
            Artifact::Word(w) => w.valid_events(model),
            Artifact::Numeral(b) => b.valid_events(model),
            Artifact::Raster(r) => r.valid_events(model),
        }
    }

    fn inject(&self, event: &ErrorEvent) -> Result<Artifact> {
        Ok(match self {
            Artifact::Word(w) => Artifact::Word(w.inject(event)?),
            Artifact::Numeral(b) => Artifact::Numeral(b.inject(event)?),
            Artifact::Raster(r) => Artifact::Raster(r.inject(event)?),
        })
    }
}

struct Sweeper<'a> {
    config: &'a SweepConfig,
    plan: Plan,
    capacity: Value,
    draws: u64,
}

impl<'a> Sweeper<'a> {
    fn new(config: &'a SweepConfig) -> Result<Self> {
        let plan = Plan::new(config)?;
        let capacity = plan.capacity();
        let randomized = matches!(config.values, ValueSource::Sampled(_))
            || config.events == EventSelection::Sampled;
        if randomized && config.seed.is_none() {
            return Err(Error::InvalidParams(
                "sampled sweeps need an explicit seed".into(),
            ));
        }
        let draws = match &config.values {
            ValueSource::Exhaustive => capacity
                .to_u64()
                .filter(|&c| c <= MAX_EXHAUSTIVE_VALUES)
                .ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "{capacity} values exceed the exhaustive limit of {MAX_EXHAUSTIVE_VALUES}; sample instead"
                    ))
                })?,
            ValueSource::Sampled(count) => *count,
            ValueSource::Listed(values) => {
                if let Some(v) = values.iter().find(|v| **v >= capacity) {
                    return Err(Error::InvalidParams(format!(
                        "value {v} is not representable (limit {capacity})"
                    )));
                }
                values.len() as u64
            }
        };
        Ok(Self {
            config,
            plan,
            capacity,
            draws,
        })
    }

    fn draw(&self, index: u64) -> Result<(Vec<Trial>, bool)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed.unwrap_or(0));
        rng.set_stream(index);
        let value = match &self.config.values {
            ValueSource::Exhaustive => Value::from(index),
            ValueSource::Sampled(_) => rng.gen_biguint_below(&self.capacity),
            ValueSource::Listed(values) => values[index as usize].clone(),
        };
        let artifact = self.plan.encode(&value)?;
        let mut events = artifact.valid_events(self.config.model);
        if events.is_empty() {
            return Ok((Vec::new(), true));
        }
        if self.config.events == EventSelection::Sampled {
            let pick = rng.gen_range(0..events.len());
            events = vec![events[pick]];
        }
        let trials = events
            .into_iter()
            .map(|event| {
                let perturbed = artifact.inject(&event)?;
                let (decoded, strict_rejected) = self.plan.decode(&perturbed, self.config.mode)?;
                Ok(Trial {
                    impact: impact(&value, &decoded),
                    value: value.clone(),
                    event,
                    decoded,
                    strict_rejected,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((trials, false))
    }
}

#[derive(Default)]
struct Tally {
    trials: u64,
    sum_abs: Value,
    max_abs: Value,
    histogram: BTreeMap<Value, u64>,
    strict_rejections: u64,
    draws_without_events: u64,
}

impl Tally {
    fn from_draw((trials, empty): (Vec<Trial>, bool)) -> Self {
        let mut tally = Tally {
            draws_without_events: u64::from(empty),
            ..Tally::default()
        };
        for trial in trials {
            let delta = trial
                .impact
                .abs()
                .to_biguint()
                .expect("absolute value is nonnegative");
            tally.trials += 1;
            tally.sum_abs += &delta;
            tally.strict_rejections += u64::from(trial.strict_rejected);
            if delta > tally.max_abs {
                tally.max_abs = delta.clone();
            }
            *tally.histogram.entry(delta).or_insert(0) += 1;
        }
        tally
    }

    fn merge(mut self, other: Tally) -> Self {
        self.trials += other.trials;
        self.sum_abs += other.sum_abs;
        self.max_abs = self.max_abs.max(other.max_abs);
        for (delta, count) in other.histogram {
            *self.histogram.entry(delta).or_insert(0) += count;
        }
        self.strict_rejections += other.strict_rejections;
        self.draws_without_events += other.draws_without_events;
        self
    }
}

/// Every trial of `config`, in draw order. Runs on the calling thread.
pub fn trials(config: &SweepConfig) -> Result<Vec<Trial>> {
    let sweeper = Sweeper::new(config)?;
    let mut out = Vec::new();
    for index in 0..sweeper.draws {
        out.extend(sweeper.draw(index)?.0);
    }
    Ok(out)
}

/// Runs the sweep on `config.jobs` workers and aggregates the trials.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let sweeper = Sweeper::new(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker pool: {e}")))?;
    let tally = pool.install(|| {
        (0..sweeper.draws)
            .into_par_iter()
            .map(|index| sweeper.draw(index).map(Tally::from_draw))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })?;
    let mean_abs_impact = if tally.trials == 0 {
        BigRational::zero()
    } else {
        BigRational::new(tally.sum_abs.into(), BigInt::from(tally.trials))
    };
    Ok(SweepReport {
        scheme: config.scheme,
        params: sweeper.plan.params_json(config),
        trials: tally.trials,
        seed: config.seed,
        max_abs_impact: tally.max_abs,
        mean_abs_impact,
        histogram: tally.histogram,
        strict_rejections: tally.strict_rejections,
        draws_without_events: tally.draws_without_events,
    })
}
