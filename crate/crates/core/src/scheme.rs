use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Stable tags naming every supported encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Positional,
    Unary,
    UnaryPositional,
    RateUnary,
    Temporal,
    TemporalRate,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Positional,
        Scheme::Unary,
        Scheme::UnaryPositional,
        Scheme::RateUnary,
        Scheme::Temporal,
        Scheme::TemporalRate,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Positional => "positional",
            Scheme::Unary => "unary",
            Scheme::UnaryPositional => "unary-positional",
            Scheme::RateUnary => "rate-unary",
            Scheme::Temporal => "temporal",
            Scheme::TemporalRate => "temporal-rate",
        }
    }

    /// True for the schemes whose artifact is a spike raster.
    pub fn is_spiking(self) -> bool {
        matches!(
            self,
            Scheme::RateUnary | Scheme::Temporal | Scheme::TemporalRate
        )
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.tag() == s)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}
