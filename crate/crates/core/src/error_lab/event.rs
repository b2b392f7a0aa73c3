use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeral::{PositionalNumeral, UnaryPositionalWord};
use crate::spike::SpikeRaster;
use crate::Value;

/// One atomic perturbation.
///
/// `DigitFlip::stream` is a weight exponent. On a unary-positional word,
/// `bit` is the position inside the stream, leftmost first; on a binary
/// numeral `stream` must be 0 and `bit` is the significance of the flipped
/// digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ErrorEvent {
    DigitFlip {
        stream: usize,
        bit: usize,
    },
    SpikeInsert {
        neuron: usize,
        slot: usize,
    },
    SpikeDelete {
        neuron: usize,
        slot: usize,
    },
    SpikeShift {
        neuron: usize,
        from_slot: usize,
        delta: isize,
    },
}

/// `flip:S:B`, `insert:N:T`, `delete:N:T`, `shift:N:T:D`
impl fmt::Display for ErrorEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ErrorEvent::DigitFlip { stream, bit } => write!(f, "flip:{stream}:{bit}"),
            ErrorEvent::SpikeInsert { neuron, slot } => write!(f, "insert:{neuron}:{slot}"),
            ErrorEvent::SpikeDelete { neuron, slot } => write!(f, "delete:{neuron}:{slot}"),
            ErrorEvent::SpikeShift {
                neuron,
                from_slot,
                delta,
            } => write!(f, "shift:{neuron}:{from_slot}:{delta}"),
        }
    }
}

impl FromStr for ErrorEvent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected flip:S:B, insert:N:T, delete:N:T or shift:N:T:D".into(),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let idx = |i: usize| parts[i].parse::<usize>().map_err(|_| bad());
        match (parts[0], parts.len()) {
            ("flip", 3) => Ok(ErrorEvent::DigitFlip {
                stream: idx(1)?,
                bit: idx(2)?,
            }),
            ("insert", 3) => Ok(ErrorEvent::SpikeInsert {
                neuron: idx(1)?,
                slot: idx(2)?,
            }),
            ("delete", 3) => Ok(ErrorEvent::SpikeDelete {
                neuron: idx(1)?,
                slot: idx(2)?,
            }),
            ("shift", 4) => Ok(ErrorEvent::SpikeShift {
                neuron: idx(1)?,
                from_slot: idx(2)?,
                delta: parts[3].parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Families of events a sweep draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorModel {
    DigitFlip,
    SpikeInsert,
    SpikeDelete,
    /// A missing or an extra spike.
    SpikeInsertDelete,
    SpikeShift,
}

impl ErrorModel {
    pub fn tag(self) -> &'static str {
        match self {
            ErrorModel::DigitFlip => "digit-flip",
            ErrorModel::SpikeInsert => "spike-insert",
            ErrorModel::SpikeDelete => "spike-delete",
            ErrorModel::SpikeInsertDelete => "spike-insert-delete",
            ErrorModel::SpikeShift => "spike-shift",
        }
    }

    pub fn targets_spikes(self) -> bool {
        self != ErrorModel::DigitFlip
    }
}

impl FromStr for ErrorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "digit-flip" | "flip" => Ok(ErrorModel::DigitFlip),
            "spike-insert" | "insert" => Ok(ErrorModel::SpikeInsert),
            "spike-delete" | "delete" => Ok(ErrorModel::SpikeDelete),
            "spike-insert-delete" | "insert-delete" => Ok(ErrorModel::SpikeInsertDelete),
            "spike-shift" | "shift" => Ok(ErrorModel::SpikeShift),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "unknown error model".into(),
            }),
        }
    }
}

/// An artifact that accepts single perturbations.
pub trait Inject: Sized {
    /// Applies `event`, leaving everything else untouched.
    fn inject(&self, event: &ErrorEvent) -> Result<Self>;

    /// Every event of `model` valid on this artifact, in a fixed order.
    fn valid_events(&self, model: ErrorModel) -> Vec<ErrorEvent>;
}

fn unsupported(event: &ErrorEvent, target: &str) -> Error {
    Error::InvalidEvent(format!("`{event}` does not apply to a {target}"))
}

impl Inject for UnaryPositionalWord {
    fn inject(&self, event: &ErrorEvent) -> Result<Self> {
        match *event {
            ErrorEvent::DigitFlip { stream, bit } => self.with_bit_flipped(stream, bit),
            _ => Err(unsupported(event, "unary-positional word")),
        }
    }

    fn valid_events(&self, model: ErrorModel) -> Vec<ErrorEvent> {
        if model != ErrorModel::DigitFlip {
            return Vec::new();
        }
        (0..self.k())
            .flat_map(|stream| (0..self.n()).map(move |bit| ErrorEvent::DigitFlip { stream, bit }))
            .collect()
    }
}

impl Inject for PositionalNumeral {
    fn inject(&self, event: &ErrorEvent) -> Result<Self> {
        match *event {
            ErrorEvent::DigitFlip { stream: 0, bit } if self.base() == 2 && bit < self.width() => {
                let mut digits = self.digits().to_vec();
                let at = digits.len() - 1 - bit;
                digits[at] ^= 1;
                self.with_digits(digits)
            }
            ErrorEvent::DigitFlip { .. } if self.base() != 2 => Err(Error::InvalidEvent(
                "digit flips are defined on binary numerals only".into(),
            )),
            ErrorEvent::DigitFlip { .. } => Err(Error::InvalidEvent(format!(
                "`{event}` is outside a {}-digit numeral",
                self.width()
            ))),
            _ => Err(unsupported(event, "positional numeral")),
        }
    }

    fn valid_events(&self, model: ErrorModel) -> Vec<ErrorEvent> {
        if model != ErrorModel::DigitFlip || self.base() != 2 {
            return Vec::new();
        }
        (0..self.width())
            .map(|bit| ErrorEvent::DigitFlip { stream: 0, bit })
            .collect()
    }
}

impl Inject for SpikeRaster {
    fn inject(&self, event: &ErrorEvent) -> Result<Self> {
        match *event {
            ErrorEvent::SpikeInsert { neuron, slot } => self.with_spike(neuron, slot),
            ErrorEvent::SpikeDelete { neuron, slot } => self.without_spike(neuron, slot),
            ErrorEvent::SpikeShift {
                neuron,
                from_slot,
                delta,
            } => {
                let to = from_slot
                    .checked_add_signed(delta)
                    .filter(|&to| delta != 0 && to < self.slot_count())
                    .ok_or_else(|| {
                        Error::InvalidEvent(format!("`{event}` does not land inside the raster"))
                    })?;
                self.without_spike(neuron, from_slot)?
                    .with_spike(neuron, to)
            }
            ErrorEvent::DigitFlip { .. } => Err(unsupported(event, "spike raster")),
        }
    }

    fn valid_events(&self, model: ErrorModel) -> Vec<ErrorEvent> {
        let empty_slots = || {
            (0..self.neuron_count()).flat_map(move |neuron| {
                (0..self.slot_count())
                    .filter(move |&slot| !self.has_spike(neuron, slot))
                    .map(move |slot| (neuron, slot))
            })
        };
        let inserts =
            || empty_slots().map(|(neuron, slot)| ErrorEvent::SpikeInsert { neuron, slot });
        let deletes = || {
            self.iter_spikes()
                .map(|(neuron, slot)| ErrorEvent::SpikeDelete { neuron, slot })
        };
        match model {
            ErrorModel::DigitFlip => Vec::new(),
            ErrorModel::SpikeInsert => inserts().collect(),
            ErrorModel::SpikeDelete => deletes().collect(),
            ErrorModel::SpikeInsertDelete => inserts().chain(deletes()).collect(),
            ErrorModel::SpikeShift => self
                .iter_spikes()
                .flat_map(|(neuron, from_slot)| {
                    (0..self.slot_count())
                        .filter(move |&to| !self.has_spike(neuron, to))
                        .map(move |to| ErrorEvent::SpikeShift {
                            neuron,
                            from_slot,
                            delta: to as isize - from_slot as isize,
                        })
                })
                .collect(),
        }
    }
}

/// Signed change `perturbed - original`.
pub fn impact(original: &Value, perturbed: &Value) -> BigInt {
    BigInt::from(perturbed.clone()) - BigInt::from(original.clone())
}
