use crate::error::{Error, Result};

/// A bundle of neurons over discrete, uniform time slots.
///
/// Storage is sparse: one ascending, duplicate-free slot list per neuron.
/// Neuron 0 is the top row of a raster plot and carries the highest weight in
/// the temporal schemes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpikeRaster {
    neuron_count: usize,
    slot_count: usize,
    spikes: Vec<Vec<usize>>,
}

/// Earliest spike slot per neuron, `None` for silent neurons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstSpikeProfile(pub Vec<Option<usize>>);

impl FirstSpikeProfile {
    pub fn get(&self, neuron: usize) -> Option<usize> {
        self.0.get(neuron).copied().flatten()
    }

    /// Spiking neurons ordered by first spike, ties going to the lower index.
    pub fn rank_order(&self) -> Vec<usize> {
        let mut spiking: Vec<(usize, usize)> = self
            .0
            .iter()
            .enumerate()
            .filter_map(|(neuron, first)| first.map(|slot| (slot, neuron)))
            .collect();
        spiking.sort_unstable();
        spiking.into_iter().map(|(_, neuron)| neuron).collect()
    }
}

impl SpikeRaster {
    pub fn empty(neuron_count: usize, slot_count: usize) -> Self {
        Self {
            neuron_count,
            slot_count,
            spikes: vec![Vec::new(); neuron_count],
        }
    }

    /// Validates per-neuron slot lists. Lists are sorted; a repeated slot is rejected.
    pub fn from_slot_lists(
        neuron_count: usize,
        slot_count: usize,
        spikes: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if spikes.len() != neuron_count {
            return Err(Error::WrongBundleSize {
                expected: neuron_count,
                found: spikes.len(),
            });
        }
        let mut builder = RasterBuilder::new(neuron_count, slot_count);
        for (neuron, slots) in spikes.into_iter().enumerate() {
            for slot in slots {
                if !builder.spike(neuron, slot)? {
                    return Err(Error::InvalidParams(format!(
                        "duplicate spike at neuron {neuron}, slot {slot}"
                    )));
                }
            }
        }
        Ok(builder.build())
    }

    pub fn neuron_count(&self) -> usize {
        self.neuron_count
    }

    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    /// Ascending slot list of one neuron.
    pub fn slots(&self, neuron: usize) -> &[usize] {
        &self.spikes[neuron]
    }

    pub fn slot_lists(&self) -> &[Vec<usize>] {
        &self.spikes
    }

    pub fn has_spike(&self, neuron: usize, slot: usize) -> bool {
        self.spikes
            .get(neuron)
            .is_some_and(|slots| slots.binary_search(&slot).is_ok())
    }

    pub fn first_spike_times(&self) -> FirstSpikeProfile {
        FirstSpikeProfile(self.spikes.iter().map(|s| s.first().copied()).collect())
    }

    pub fn spike_counts(&self) -> Vec<usize> {
        self.spikes.iter().map(Vec::len).collect()
    }

    pub fn total_spikes(&self) -> usize {
        self.spikes.iter().map(Vec::len).sum()
    }

    /// Every `(neuron, slot)` pair, neuron-major.
    pub fn iter_spikes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.spikes
            .iter()
            .enumerate()
            .flat_map(|(neuron, slots)| slots.iter().map(move |&slot| (neuron, slot)))
    }

    /// Copy with one spike added at an empty, in-range coordinate.
    pub fn with_spike(&self, neuron: usize, slot: usize) -> Result<Self> {
        self.check_bounds(neuron, slot)?;
        let slots = &self.spikes[neuron];
        match slots.binary_search(&slot) {
            Ok(_) => Err(Error::InvalidEvent(format!(
                "slot {slot} of neuron {neuron} already holds a spike"
            ))),
            Err(at) => {
                let mut out = self.clone();
                out.spikes[neuron].insert(at, slot);
                Ok(out)
            }
        }
    }

    /// Copy with one existing spike removed.
    pub fn without_spike(&self, neuron: usize, slot: usize) -> Result<Self> {
        self.check_bounds(neuron, slot)?;
        match self.spikes[neuron].binary_search(&slot) {
            Ok(at) => {
                let mut out = self.clone();
                out.spikes[neuron].remove(at);
                Ok(out)
            }
            Err(_) => Err(Error::InvalidEvent(format!(
                "no spike at slot {slot} of neuron {neuron}"
            ))),
        }
    }

    fn check_bounds(&self, neuron: usize, slot: usize) -> Result<()> {
        if neuron >= self.neuron_count || slot >= self.slot_count {
            return Err(Error::OutOfBounds {
                neuron,
                slot,
                neuron_count: self.neuron_count,
                slot_count: self.slot_count,
            });
        }
        Ok(())
    }
}

/// Single-threaded incremental construction of a [`SpikeRaster`].
#[derive(Debug, Clone)]
pub struct RasterBuilder {
    raster: SpikeRaster,
}

impl RasterBuilder {
    pub fn new(neuron_count: usize, slot_count: usize) -> Self {
        Self {
            raster: SpikeRaster::empty(neuron_count, slot_count),
        }
    }

    /// Records a spike; returns false if the coordinate was already occupied.
    pub fn spike(&mut self, neuron: usize, slot: usize) -> Result<bool> {
        self.raster.check_bounds(neuron, slot)?;
        let slots = &mut self.raster.spikes[neuron];
        match slots.binary_search(&slot) {
            Ok(_) => Ok(false),
            Err(at) => {
                slots.insert(at, slot);
                Ok(true)
            }
        }
    }

    /// Records spikes on every slot of `range` for one neuron.
    pub fn spike_run(&mut self, neuron: usize, range: std::ops::Range<usize>) -> Result<&mut Self> {
        for slot in range {
            self.spike(neuron, slot)?;
        }
        Ok(self)
    }

    pub fn build(self) -> SpikeRaster {
        self.raster
    }
}
