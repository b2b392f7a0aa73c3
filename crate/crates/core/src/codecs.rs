//! Spike-train encodings: rate-unary, temporal-positional and temporal-rate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::PositionalNumeral;
use crate::scheme::Scheme;
use crate::spike::{RasterBuilder, SpikeRaster};
use crate::Value;

/// How weights are attached to neurons when decoding a temporal raster.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeMode {
    /// Neuron `i` always carries weight `base^(k-1-i)`.
    #[default]
    FixedSchedule,
    /// Weights follow each neuron's first-spike time: a first spike at
    /// schedule position `p` earns `base^(k-1-p)`. Simultaneous first spikes
    /// go to the lower neuron index, the others slide to the next free
    /// position. Silent neurons and positions past `k-1` contribute nothing.
    FirstSpikeOrder,
}

impl FromStr for DecodeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" | "fixed-schedule" => Ok(DecodeMode::FixedSchedule),
            "order" | "first-spike-order" => Ok(DecodeMode::FirstSpikeOrder),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `fixed` or `order`".into(),
            }),
        }
    }
}

/// What to do when a temporal-rate neuron fires `n` or more times.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountPolicy {
    /// Reject with [`Error::CountOverflow`].
    #[default]
    Strict,
    /// Clamp the count to `n - 1`.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComparisonOutcome {
    Less,
    Equal,
    Greater,
    Ambiguous,
}

impl From<Ordering> for ComparisonOutcome {
    fn from(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => ComparisonOutcome::Less,
            Ordering::Equal => ComparisonOutcome::Equal,
            Ordering::Greater => ComparisonOutcome::Greater,
        }
    }
}

impl fmt::Display for ComparisonOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComparisonOutcome::Less => "LESS",
            ComparisonOutcome::Equal => "EQUAL",
            ComparisonOutcome::Greater => "GREATER",
            ComparisonOutcome::Ambiguous => "AMBIGUOUS",
        })
    }
}

/// Base (and window length) `n` with `k` neurons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalRateParams {
    n: usize,
    k: usize,
}

impl TemporalRateParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidBase(n as u64));
        }
        if k == 0 {
            return Err(Error::InvalidWidth("k must be at least 1".into()));
        }
        if n.checked_mul(k).is_none() {
            return Err(Error::InvalidParams(format!(
                "{k} windows of {n} slots overflow"
            )));
        }
        Ok(Self { n, k })
    }

    /// Smallest `k` that holds `value`.
    pub fn fitting(value: &Value, n: usize) -> Result<Self> {
        Self::new(n, 1)?;
        Self::new(n, crate::numeral::digit_count(value, n as u32)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn timeline(&self) -> usize {
        self.n * self.k
    }

    /// Exclusive upper bound on encodable values, `n^k`.
    pub fn capacity(&self) -> Value {
        Pow::pow(Value::from(self.n), self.k)
    }
}

/// One neuron firing `value` times in slots `0..value` of a `slot_cap` timeline.
pub fn rate_unary_encode(value: &Value, slot_cap: usize) -> Result<SpikeRaster> {
    let count =
        value
            .to_usize()
            .filter(|&c| c <= slot_cap)
            .ok_or_else(|| Error::CapacityExceeded {
                value: value.to_string(),
                cap: slot_cap,
            })?;
    let mut builder = RasterBuilder::new(1, slot_cap);
    builder.spike_run(0, 0..count)?;
    Ok(builder.build())
}

/// Spike count of a single-neuron raster; placement is ignored.
pub fn rate_unary_decode(raster: &SpikeRaster) -> Result<Value> {
    if raster.neuron_count() != 1 {
        return Err(Error::WrongBundleSize {
            expected: 1,
            found: raster.neuron_count(),
        });
    }
    Ok(Value::from(raster.total_spikes()))
}

fn fixed_width_digits(value: &Value, base: u32, k: usize) -> Result<PositionalNumeral> {
    if k == 0 {
        return Err(Error::InvalidWidth("k must be at least 1".into()));
    }
    let digits = PositionalNumeral::encode(value, base, Some(k))?;
    if digits.width() > k {
        return Err(Error::Overflow(format!(
            "{value} does not fit in {k} base-{base} digits"
        )));
    }
    Ok(digits)
}

/// `k` neurons over `k` slots: neuron `i` fires at slot `i` iff digit `i`
/// (most significant first) is nonzero. Lossless only for base 2.
pub fn temporal_positional_encode(value: &Value, base: u32, k: usize) -> Result<SpikeRaster> {
    let digits = fixed_width_digits(value, base, k)?;
    let mut builder = RasterBuilder::new(k, k);
    for (i, &d) in digits.digits().iter().enumerate() {
        if d != 0 {
            builder.spike(i, i)?;
        }
    }
    Ok(builder.build())
}

pub fn temporal_positional_decode(
    raster: &SpikeRaster,
    base: u32,
    mode: DecodeMode,
) -> Result<Value> {
    if base < 2 {
        return Err(Error::InvalidBase(base.into()));
    }
    let k = raster.neuron_count();
    let weight = |rank: usize| Pow::pow(BigUint::from(base), k - 1 - rank);
    match mode {
        DecodeMode::FixedSchedule => {
            if raster.slot_count() < k {
                return Err(Error::SchemeMismatch(format!(
                    "fixed schedule needs at least {k} slots, raster has {}",
                    raster.slot_count()
                )));
            }
            Ok((0..k)
                .filter(|&i| !raster.slots(i).is_empty())
                .map(weight)
                .sum())
        }
        DecodeMode::FirstSpikeOrder => Ok(weight_positions(raster, 1, k)
            .into_iter()
            .flatten()
            .map(weight)
            .sum()),
    }
}

/// Weight position (0 = highest) earned by each neuron's first spike, where
/// one position spans `slots_per_position` slots.
fn weight_positions(
    raster: &SpikeRaster,
    slots_per_position: usize,
    k: usize,
) -> Vec<Option<usize>> {
    let profile = raster.first_spike_times();
    let mut positions = vec![None; raster.neuron_count()];
    let mut next_free = 0;
    for neuron in profile.rank_order() {
        let first = profile.get(neuron).expect("ranked neurons have spiked");
        let p = (first / slots_per_position).max(next_free);
        next_free = p + 1;
        if p < k {
            positions[neuron] = Some(p);
        }
    }
    positions
}

/// Nonzero-digit pattern of `value`, most significant first, e.g. `"111"`.
/// Values sharing a pattern share one temporal encoding.
pub fn temporal_lossy_class(value: &Value, base: u32, k: usize) -> Result<String> {
    let digits = fixed_width_digits(value, base, k)?;
    Ok(digits
        .digits()
        .iter()
        .map(|&d| if d == 0 { '0' } else { '1' })
        .collect())
}

/// Neuron `i` owns slots `[i*n, (i+1)*n)` and fires digit `i` (most
/// significant first) times, packed against the end of its window.
pub fn temporal_rate_encode(value: &Value, params: TemporalRateParams) -> Result<SpikeRaster> {
    let (n, k) = (params.n(), params.k());
    let digits = fixed_width_digits(value, n as u32, k)?;
    let mut builder = RasterBuilder::new(k, params.timeline());
    for (i, &d) in digits.digits().iter().enumerate() {
        let end = (i + 1) * n;
        builder.spike_run(i, end - d as usize..end)?;
    }
    Ok(builder.build())
}

pub fn temporal_rate_decode(
    raster: &SpikeRaster,
    params: TemporalRateParams,
    mode: DecodeMode,
    policy: CountPolicy,
) -> Result<Value> {
    let (n, k) = (params.n(), params.k());
    if raster.neuron_count() != k {
        return Err(Error::WrongBundleSize {
            expected: k,
            found: raster.neuron_count(),
        });
    }
    if mode == DecodeMode::FixedSchedule && raster.slot_count() != params.timeline() {
        return Err(Error::SchemeMismatch(format!(
            "expected {} slots for n={n}, k={k}, raster has {}",
            params.timeline(),
            raster.slot_count()
        )));
    }
    let coefficient = |neuron: usize| -> Result<usize> {
        let count = raster.slots(neuron).len();
        match policy {
            _ if count < n => Ok(count),
            CountPolicy::Strict => Err(Error::CountOverflow {
                neuron,
                count,
                max: n - 1,
            }),
            CountPolicy::Lenient => Ok(n - 1),
        }
    };
    let base = BigUint::from(n);
    let positions: Vec<Option<usize>> = match mode {
        DecodeMode::FixedSchedule => (0..k).map(Some).collect(),
        DecodeMode::FirstSpikeOrder => weight_positions(raster, n, k),
    };
    let mut value = Value::zero();
    for (neuron, position) in positions.into_iter().enumerate() {
        if let Some(p) = position {
            value += Pow::pow(&base, k - 1 - p) * coefficient(neuron)?;
        }
    }
    Ok(value)
}

/// Orders two encoded values without decoding them where the scheme allows.
///
/// Temporal rasters are compared by their highest-weight spiking neuron;
/// with equal leaders only base 2 is decidable. Temporal-rate rasters (base
/// `n`) always decode exactly.
pub fn compare_encoded(
    a: &SpikeRaster,
    b: &SpikeRaster,
    base: u32,
    scheme: Scheme,
) -> Result<ComparisonOutcome> {
    if a.neuron_count() != b.neuron_count() || a.slot_count() != b.slot_count() {
        return Err(Error::SchemeMismatch(format!(
            "rasters of shape {}x{} and {}x{} are not comparable",
            a.neuron_count(),
            a.slot_count(),
            b.neuron_count(),
            b.slot_count()
        )));
    }
    match scheme {
        Scheme::Temporal => {
            if base < 2 {
                return Err(Error::InvalidBase(base.into()));
            }
            let leader = |r: &SpikeRaster| (0..r.neuron_count()).find(|&i| !r.slots(i).is_empty());
            match (leader(a), leader(b)) {
                (None, None) => Ok(ComparisonOutcome::Equal),
                (Some(_), None) => Ok(ComparisonOutcome::Greater),
                (None, Some(_)) => Ok(ComparisonOutcome::Less),
                // lower index means earlier spike, means larger weight
                (Some(x), Some(y)) if x != y => Ok(y.cmp(&x).into()),
                _ if base == 2 => {
                    let va = temporal_positional_decode(a, 2, DecodeMode::FixedSchedule)?;
                    let vb = temporal_positional_decode(b, 2, DecodeMode::FixedSchedule)?;
                    Ok(va.cmp(&vb).into())
                }
                _ => Ok(ComparisonOutcome::Ambiguous),
            }
        }
        Scheme::TemporalRate => {
            let params = TemporalRateParams::new(base as usize, a.neuron_count())?;
            let decode =
                |r| temporal_rate_decode(r, params, DecodeMode::FixedSchedule, CountPolicy::Strict);
            Ok(decode(a)?.cmp(&decode(b)?).into())
        }
        other => Err(Error::SchemeMismatch(format!(
            "`{other}` rasters have no ordering rule"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: u64) -> Value {
        Value::from(n)
    }

    #[test]
    fn rate_unary_examples() {
        let r = rate_unary_encode(&v(355), 355).unwrap();
        assert_eq!((r.neuron_count(), r.slot_count()), (1, 355));
        assert_eq!(r.spike_counts(), vec![355]);
        assert_eq!(rate_unary_decode(&r).unwrap(), v(355));

        let empty = rate_unary_encode(&v(0), 10).unwrap();
        assert_eq!((empty.slot_count(), empty.total_spikes()), (10, 0));
        assert_eq!(rate_unary_decode(&empty).unwrap(), v(0));

        let seven = rate_unary_encode(&v(7), 8).unwrap();
        assert_eq!(seven.slots(0), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn rate_unary_errors() {
        assert!(matches!(
            rate_unary_encode(&v(9), 8),
            Err(Error::CapacityExceeded { cap: 8, .. })
        ));
        assert_eq!(
            rate_unary_decode(&SpikeRaster::empty(2, 4)),
            Err(Error::WrongBundleSize {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn temporal_binary_355() {
        let r = temporal_positional_encode(&v(355), 2, 9).unwrap();
        let spiking: Vec<usize> = (0..9).filter(|&i| !r.slots(i).is_empty()).collect();
        assert_eq!(spiking, vec![0, 2, 3, 7, 8]);
        for &i in &spiking {
            assert_eq!(r.slots(i), &[i]);
        }
        assert_eq!(r.first_spike_times().get(0), Some(0));
        for mode in [DecodeMode::FixedSchedule, DecodeMode::FirstSpikeOrder] {
            assert_eq!(temporal_positional_decode(&r, 2, mode).unwrap(), v(355));
        }
    }

    #[test]
    fn temporal_octal_is_lossy() {
        let r = temporal_positional_encode(&v(355), 8, 3).unwrap();
        assert_eq!(r.spike_counts(), vec![1, 1, 1]);
        assert_eq!(
            temporal_positional_decode(&r, 8, DecodeMode::FixedSchedule).unwrap(),
            v(73)
        );
    }

    #[test]
    fn temporal_zero_and_overflow() {
        let r = temporal_positional_encode(&v(0), 8, 3).unwrap();
        assert_eq!(r.total_spikes(), 0);
        assert_eq!(
            temporal_positional_decode(&r, 8, DecodeMode::FixedSchedule).unwrap(),
            v(0)
        );
        assert!(matches!(
            temporal_positional_encode(&v(512), 8, 3),
            Err(Error::Overflow(_))
        ));
        assert!(matches!(
            temporal_positional_encode(&v(1), 1, 3),
            Err(Error::InvalidBase(1))
        ));
    }

    #[test]
    fn fixed_schedule_needs_enough_slots() {
        let r = SpikeRaster::empty(3, 2);
        assert!(matches!(
            temporal_positional_decode(&r, 2, DecodeMode::FixedSchedule),
            Err(Error::SchemeMismatch(_))
        ));
        assert_eq!(
            temporal_positional_decode(&r, 2, DecodeMode::FirstSpikeOrder).unwrap(),
            v(0)
        );
    }

    #[test]
    fn order_mode_weights_follow_spike_time() {
        let decode = |lists: Vec<Vec<usize>>, mode| {
            let r = SpikeRaster::from_slot_lists(3, 3, lists).unwrap();
            temporal_positional_decode(&r, 2, mode).unwrap()
        };
        // neuron 1 fires at t0 and takes weight 4; neuron 0 at t2 takes 1
        assert_eq!(
            decode(vec![vec![2], vec![0], vec![]], DecodeMode::FirstSpikeOrder),
            v(5)
        );
        assert_eq!(
            decode(vec![vec![2], vec![0], vec![]], DecodeMode::FixedSchedule),
            v(6)
        );
        // tie at t0: neuron 0 keeps 4, neuron 1 slides to 2
        assert_eq!(
            decode(
                vec![vec![0], vec![0, 1], vec![]],
                DecodeMode::FirstSpikeOrder
            ),
            v(6)
        );
        // three-way tie at the last position: only neuron 0 keeps a weight
        assert_eq!(
            decode(vec![vec![2], vec![2], vec![2]], DecodeMode::FirstSpikeOrder),
            v(1)
        );
    }

    #[test]
    fn order_mode_temporal_rate_uses_windows() {
        let params = TemporalRateParams::new(4, 2).unwrap();
        // neuron 1 fires twice in window 0, neuron 0 three times in window 1
        let r = SpikeRaster::from_slot_lists(2, 8, vec![vec![5, 6, 7], vec![2, 3]]).unwrap();
        assert_eq!(
            temporal_rate_decode(&r, params, DecodeMode::FirstSpikeOrder, CountPolicy::Strict)
                .unwrap(),
            v(2 * 4 + 3)
        );
        assert_eq!(
            temporal_rate_decode(&r, params, DecodeMode::FixedSchedule, CountPolicy::Strict)
                .unwrap(),
            v(3 * 4 + 2)
        );
    }

    #[test]
    fn lossy_classes() {
        for value in [137, 145, 217] {
            assert_eq!(temporal_lossy_class(&v(value), 8, 3).unwrap(), "111");
        }
        for value in [256, 384, 448] {
            assert_eq!(temporal_lossy_class(&v(value), 8, 3).unwrap(), "100");
        }
        assert_eq!(temporal_lossy_class(&v(0), 8, 3).unwrap(), "000");
        assert!(temporal_lossy_class(&v(512), 8, 3).is_err());
    }

    #[test]
    fn temporal_rate_355() {
        let params = TemporalRateParams::new(8, 3).unwrap();
        let r = temporal_rate_encode(&v(355), params).unwrap();
        assert_eq!((r.neuron_count(), r.slot_count()), (3, 24));
        assert_eq!(r.spike_counts(), vec![5, 4, 3]);
        let windows: Vec<String> = (0..3)
            .map(|i| {
                (i * 8..(i + 1) * 8)
                    .map(|s| if r.has_spike(i, s) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        assert_eq!(windows, ["00011111", "00001111", "00000111"]);
        for mode in [DecodeMode::FixedSchedule, DecodeMode::FirstSpikeOrder] {
            assert_eq!(
                temporal_rate_decode(&r, params, mode, CountPolicy::Strict).unwrap(),
                v(355)
            );
        }
        let zero = temporal_rate_encode(&v(0), params).unwrap();
        assert_eq!(
            (zero.neuron_count(), zero.slot_count(), zero.total_spikes()),
            (3, 24, 0)
        );
    }

    #[test]
    fn count_policy() {
        let params = TemporalRateParams::new(4, 1).unwrap();
        let r = SpikeRaster::from_slot_lists(1, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            temporal_rate_decode(&r, params, DecodeMode::FixedSchedule, CountPolicy::Strict),
            Err(Error::CountOverflow {
                neuron: 0,
                count: 4,
                max: 3
            })
        );
        assert_eq!(
            temporal_rate_decode(&r, params, DecodeMode::FixedSchedule, CountPolicy::Lenient)
                .unwrap(),
            v(3)
        );
    }

    #[test]
    fn temporal_rate_shape_checks() {
        let params = TemporalRateParams::new(8, 3).unwrap();
        assert!(matches!(
            temporal_rate_decode(
                &SpikeRaster::empty(3, 23),
                params,
                DecodeMode::FixedSchedule,
                CountPolicy::Strict
            ),
            Err(Error::SchemeMismatch(_))
        ));
        assert!(matches!(
            temporal_rate_decode(
                &SpikeRaster::empty(2, 24),
                params,
                DecodeMode::FixedSchedule,
                CountPolicy::Strict
            ),
            Err(Error::WrongBundleSize { .. })
        ));
        assert!(TemporalRateParams::new(6, 3).is_err());
        assert!(TemporalRateParams::new(8, 0).is_err());
        assert_eq!(TemporalRateParams::fitting(&v(355), 8).unwrap().k(), 3);
        assert_eq!(TemporalRateParams::fitting(&v(0), 8).unwrap().k(), 1);
    }

    #[test]
    fn comparisons() {
        let enc = |x| temporal_positional_encode(&v(x), 8, 3).unwrap();
        assert_eq!(
            compare_encoded(&enc(137), &enc(256), 8, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Ambiguous
        );
        assert_eq!(
            compare_encoded(&enc(7), &enc(73), 8, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Less
        );
        assert_eq!(
            compare_encoded(&enc(0), &enc(0), 8, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Equal
        );
        // same pattern, different values: still undecidable in base 8
        assert_eq!(
            compare_encoded(&enc(137), &enc(145), 8, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Ambiguous
        );

        let bin = |x| temporal_positional_encode(&v(x), 2, 9).unwrap();
        assert_eq!(
            compare_encoded(&bin(355), &bin(355), 2, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Equal
        );
        assert_eq!(
            compare_encoded(&bin(300), &bin(290), 2, Scheme::Temporal).unwrap(),
            ComparisonOutcome::Greater
        );

        let params = TemporalRateParams::new(8, 3).unwrap();
        let tr = |x| temporal_rate_encode(&v(x), params).unwrap();
        assert_eq!(
            compare_encoded(&tr(137), &tr(256), 8, Scheme::TemporalRate).unwrap(),
            ComparisonOutcome::Less
        );
        assert_eq!(
            compare_encoded(&tr(355), &tr(355), 8, Scheme::TemporalRate).unwrap(),
            ComparisonOutcome::Equal
        );
        assert!(matches!(
            compare_encoded(&enc(1), &bin(1), 8, Scheme::Temporal),
            Err(Error::SchemeMismatch(_))
        ));
    }
}
