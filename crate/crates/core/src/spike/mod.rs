//! Discrete-time spike rasters shared by every spike codec.

mod io;
mod raster;

pub use raster::{FirstSpikeProfile, RasterBuilder, SpikeRaster};
