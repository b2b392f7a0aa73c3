//! One encoded artifact of any scheme, with its text and JSON forms.

use num_traits::ToPrimitive;
use unipos::codecs::{
    rate_unary_decode, rate_unary_encode, temporal_positional_decode, temporal_positional_encode,
    temporal_rate_decode, temporal_rate_encode, CountPolicy, DecodeMode, TemporalRateParams,
};
use unipos::error_lab::{ErrorEvent, Inject};
use unipos::numeral::{
    digit_count, unary_decode, unary_encode, unary_positional_decode, unary_positional_encode,
    PositionalNumeral, UnaryPositionalWord, UnaryStream,
};
use unipos::spike::SpikeRaster;
use unipos::{Error, Result, Scheme, Value};

use crate::args::{Format, Mode, SchemeArgs};

/// Scheme plus the parameters needed to encode or decode under it.
#[derive(Debug, Clone, Copy)]
pub struct Codec {
    pub scheme: Scheme,
    pub base: Option<u32>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub slot_cap: Option<usize>,
    pub mode: DecodeMode,
    pub policy: CountPolicy,
}

impl Codec {
    pub fn from_args(args: &SchemeArgs) -> Result<Self> {
        Ok(Self {
            scheme: args.scheme.parse()?,
            base: args.base,
            n: args.n,
            k: args.k,
            slot_cap: args.slot_cap,
            mode: DecodeMode::FixedSchedule,
            policy: CountPolicy::Strict,
        })
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = match mode {
            Mode::Fixed => DecodeMode::FixedSchedule,
            Mode::Order => DecodeMode::FirstSpikeOrder,
        };
        self
    }

    fn base(&self) -> u32 {
        self.base.unwrap_or(2)
    }

    fn n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::InvalidParams(format!("`{}` needs --n", self.scheme)))
    }

    pub fn encode(&self, value: &Value) -> Result<Artifact> {
        Ok(match self.scheme {
            Scheme::Positional => {
                Artifact::Numeral(PositionalNumeral::encode(value, self.base(), self.k)?)
            }
            Scheme::Unary => Artifact::Unary(unary_encode(value)),
            Scheme::UnaryPositional => {
                Artifact::Word(unary_positional_encode(value, self.n()?, self.k)?)
            }
            Scheme::RateUnary => {
                let slot_cap = match self.slot_cap {
                    Some(cap) => cap,
                    None => value.to_usize().ok_or_else(|| Error::CapacityExceeded {
                        value: value.to_string(),
                        cap: usize::MAX,
                    })?,
                };
                Artifact::Raster(rate_unary_encode(value, slot_cap)?)
            }
            Scheme::Temporal => {
                let k = match self.k {
                    Some(k) => k,
                    None => digit_count(value, self.base())?,
                };
                Artifact::Raster(temporal_positional_encode(value, self.base(), k)?)
            }
            Scheme::TemporalRate => {
                let params = match self.k {
                    Some(k) => TemporalRateParams::new(self.n()?, k)?,
                    None => TemporalRateParams::fitting(value, self.n()?)?,
                };
                Artifact::Raster(temporal_rate_encode(value, params)?)
            }
        })
    }

    /// Parses an artifact in its text form (digit schemes) or JSON (rasters).
    pub fn read(&self, input: &str) -> Result<Artifact> {
        let text = input.trim();
        Ok(match self.scheme {
            Scheme::Positional => Artifact::Numeral(text.parse()?),
            Scheme::Unary => Artifact::Unary(text.parse()?),
            Scheme::UnaryPositional => Artifact::Word(text.parse()?),
            _ => Artifact::Raster(SpikeRaster::from_json(input)?),
        })
    }

    pub fn decode(&self, artifact: &Artifact) -> Result<Value> {
        match (artifact, self.scheme) {
            (Artifact::Numeral(x), Scheme::Positional) => Ok(x.value()),
            (Artifact::Unary(x), Scheme::Unary) => Ok(unary_decode(x)),
            (Artifact::Word(x), Scheme::UnaryPositional) => Ok(unary_positional_decode(x)),
            (Artifact::Raster(r), Scheme::RateUnary) => rate_unary_decode(r),
            (Artifact::Raster(r), Scheme::Temporal) => {
                temporal_positional_decode(r, self.base(), self.mode)
            }
            (Artifact::Raster(r), Scheme::TemporalRate) => {
                let params =
                    TemporalRateParams::new(self.n()?, self.k.unwrap_or(r.neuron_count()))?;
                temporal_rate_decode(r, params, self.mode, self.policy)
            }
            _ => Err(Error::SchemeMismatch(format!(
                "artifact does not belong to `{}`",
                self.scheme
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Numeral(PositionalNumeral),
    Unary(UnaryStream),
    Word(UnaryPositionalWord),
    Raster(SpikeRaster),
}

impl Artifact {
    /// Rasters read best as JSON, digit strings as text.
    pub fn default_format(&self) -> Format {
        match self {
            Artifact::Raster(_) => Format::Json,
            _ => Format::Text,
        }
    }

    pub fn render(&self, scheme: Scheme, format: Format) -> String {
        match (self, format) {
            (Artifact::Raster(r), Format::Json) => r.to_json(),
            (Artifact::Raster(r), Format::Csv) => r.to_csv(),
            (Artifact::Raster(r), Format::Text) => r.to_text(),
            (_, Format::Text) => self.text(),
            (_, Format::Json) => serde_json::json!({
                "scheme": scheme.tag(),
                "encoded": self.text(),
            })
            .to_string(),
            (_, Format::Csv) => format!("scheme,encoded\n{},{}\n", scheme.tag(), self.text()),
        }
    }

    /// JSON value for embedding in larger reports.
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Artifact::Raster(r) => {
                serde_json::from_str(&r.to_json()).expect("raster JSON is well formed")
            }
            _ => serde_json::Value::String(self.text()),
        }
    }

    fn text(&self) -> String {
        match self {
            Artifact::Numeral(x) => x.to_string(),
            Artifact::Unary(x) => x.to_string(),
            Artifact::Word(x) => x.to_string(),
            Artifact::Raster(r) => r.to_json(),
        }
    }

    pub fn inject(&self, event: &ErrorEvent) -> Result<Artifact> {
        Ok(match self {
            Artifact::Numeral(x) => Artifact::Numeral(x.inject(event)?),
            Artifact::Word(x) => Artifact::Word(x.inject(event)?),
            Artifact::Raster(r) => Artifact::Raster(r.inject(event)?),
            Artifact::Unary(_) => {
                return Err(Error::InvalidEvent(format!(
                    "`{event}` does not apply to a unary stream"
                )))
            }
        })
    }
}
