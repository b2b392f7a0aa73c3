//! Digit-level codecs: positional numerals, unary streams and unary-positional words.

mod bounds;
mod positional;
mod unary;
mod word;

pub use bounds::max_error_impact;
pub use positional::{
    digit_count, parse_value, positional_decode, positional_encode, PositionalNumeral,
};
pub use unary::{
    unary_decode, unary_encode, unary_length_for, UnaryStream, DEFAULT_MATERIALIZATION_CAP,
};
pub use word::{
    binary_to_unary_positional, canonicalize, unary_positional_decode, unary_positional_encode,
    UnaryPositionalWord,
};
