//! Single-fault injection over words, numerals and rasters, and sweeps
//! that measure the resulting decode error.

mod event;
mod sweep;

pub use event::{impact, ErrorEvent, ErrorModel, Inject};
pub use sweep::{
    sweep, trials, EventSelection, SweepConfig, SweepParams, SweepReport, Trial, ValueSource,
    GENERATOR, MAX_EXHAUSTIVE_VALUES,
};
