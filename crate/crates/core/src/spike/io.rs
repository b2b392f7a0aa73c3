//! Serialized forms of a [`SpikeRaster`].
//!
//! JSON: `{"neuron_count":N,"slot_count":T,"spikes":[[...],...]}` with one
//! ascending slot list per neuron. CSV: header `neuron,slot`, one row per
//! spike, neuron-major and ascending. Text: one row of `0`/`1` per neuron.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spike::SpikeRaster;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RasterDoc {
    neuron_count: usize,
    slot_count: usize,
    spikes: Vec<Vec<usize>>,
}

impl SpikeRaster {
    pub fn to_json(&self) -> String {
        let doc = RasterDoc {
            neuron_count: self.neuron_count(),
            slot_count: self.slot_count(),
            spikes: self.slot_lists().to_vec(),
        };
        serde_json::to_string(&doc).expect("raster serialization is infallible")
    }

    /// Parses the JSON form. Slot lists may arrive unsorted; repeats are rejected.
    pub fn from_json(input: &str) -> Result<Self> {
        let doc: RasterDoc = serde_json::from_str(input).map_err(|e| Error::MalformedInput {
            line: e.line(),
            column: e.column(),
            reason: e.to_string(),
        })?;
        if doc.spikes.len() != doc.neuron_count {
            return Err(Error::MalformedInput {
                line: 0,
                column: 0,
                reason: format!(
                    "`spikes` has {} rows but neuron_count is {}",
                    doc.spikes.len(),
                    doc.neuron_count
                ),
            });
        }
        for (neuron, slots) in doc.spikes.iter().enumerate() {
            if let Some(&slot) = slots.iter().find(|&&s| s >= doc.slot_count) {
                return Err(Error::OutOfBounds {
                    neuron,
                    slot,
                    neuron_count: doc.neuron_count,
                    slot_count: doc.slot_count,
                });
            }
        }
        SpikeRaster::from_slot_lists(doc.neuron_count, doc.slot_count, doc.spikes).map_err(|e| {
            Error::MalformedInput {
                line: 0,
                column: 0,
                reason: e.to_string(),
            }
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("neuron,slot\n");
        for (neuron, slot) in self.iter_spikes() {
            writeln!(out, "{neuron},{slot}").unwrap();
        }
        out
    }

    /// One `0`/`1` row per neuron, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.neuron_count() * (self.slot_count() + 1));
        for neuron in 0..self.neuron_count() {
            let mut row = vec![b'0'; self.slot_count()];
            for &slot in self.slots(neuron) {
                row[slot] = b'1';
            }
            out.push_str(std::str::from_utf8(&row).unwrap());
            out.push('\n');
        }
        out
    }
}
