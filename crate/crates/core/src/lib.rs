//! Number encodings compared by compactness and error tolerance.
//!
//! Digit-level representations live in [`numeral`]: positional numerals,
//! unary streams and unary-positional words (`k` unary streams of length
//! `n`, stream `i` weighted `n^i`). Their spike-train counterparts live in
//! [`codecs`] over the raster model in [`spike`]. [`error_lab`] injects
//! single faults and measures their impact; [`metrics`] reports latency,
//! spike counts and bandwidth utilization for each scheme.

pub mod codecs;
pub mod error;
pub mod error_lab;
pub mod metrics;
pub mod numeral;
pub mod scheme;
pub mod spike;

pub use error::{Error, Result};
pub use scheme::Scheme;

/// Arbitrary-precision nonnegative integer represented by every encoding.
pub type Value = num_bigint::BigUint;
