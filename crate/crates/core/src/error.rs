use thiserror::Error;

/// Errors raised by the codecs, the raster model and the fault-injection lab.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u32 },

    #[error("invalid base {0}")]
    InvalidBase(u64),

    #[error("invalid width: {0}")]
    InvalidWidth(String),

    #[error("stream {stream} has length {found}, expected {expected}")]
    LengthMismatch {
        stream: usize,
        expected: usize,
        found: usize,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("unary stream of {len} digits exceeds the materialization cap of {cap}")]
    MaterializationLimit { len: String, cap: usize },

    #[error("value {value} exceeds the slot capacity {cap}")]
    CapacityExceeded { value: String, cap: usize },

    #[error("expected a bundle of {expected} neuron(s), found {found}")]
    WrongBundleSize { expected: usize, found: usize },

    #[error("neuron {neuron} fired {count} spikes, at most {max} allowed")]
    CountOverflow {
        neuron: usize,
        count: usize,
        max: usize,
    },

    #[error("scheme mismatch: {0}")]
    SchemeMismatch(String),

    #[error("malformed input at line {line}, column {column}: {reason}")]
    MalformedInput {
        line: usize,
        column: usize,
        reason: String,
    },

    #[error("spike ({neuron}, {slot}) outside a {neuron_count}x{slot_count} raster")]
    OutOfBounds {
        neuron: usize,
        slot: usize,
        neuron_count: usize,
        slot_count: usize,
    },

    #[error("invalid event: {0}")]
    InvalidEvent(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
