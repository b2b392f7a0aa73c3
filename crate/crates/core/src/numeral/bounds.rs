use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::scheme::Scheme;
use crate::Value;

/// Largest change a single corrupted digit can make to a `k`-stream,
/// length-`n` unary-positional word, or to its equal-length binary and unary
/// counterparts.
///
/// Binary is compared at the same capacity, `log2(n) * k` bits, where the
/// most significant bit dominates.
pub fn max_error_impact(scheme: Scheme, n: usize, k: usize) -> Result<Value> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidBase(n as u64));
    }
    if k == 0 {
        return Err(Error::InvalidWidth("k must be at least 1".into()));
    }
    let m = n.trailing_zeros() as usize;
    match scheme {
        Scheme::UnaryPositional => Ok(Pow::pow(Value::from(n), k - 1)),
        Scheme::Positional => Ok(Value::one() << (m * k - 1)),
        Scheme::Unary => Ok(Value::one()),
        other => Err(Error::UnknownScheme(other.tag().to_string())),
    }
}
