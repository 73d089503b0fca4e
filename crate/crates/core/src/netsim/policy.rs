use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What happens to base stations in the silencing annulus.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SilencingPolicy {
    #[default]
    None,
    Complete,
    /// Transmit power scaled by the factor, `0 <= factor <= 1`.
    Partial(f64),
    /// Silencing-zone stations move to an alternate band at full power.
    SpectrumSplit,
}

impl SilencingPolicy {
    pub fn partial(factor: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&factor) {
            return Err(Error::domain(format!("silencing factor {factor} outside [0, 1]")));
        }
        Ok(Self::Partial(factor))
    }

    /// Power factor applied to silencing-zone stations on the disaster band.
    pub fn disaster_band_factor(&self) -> f64 {
        match *self {
            Self::None => 1.0,
            Self::Complete | Self::SpectrumSplit => 0.0,
            Self::Partial(rho) => rho,
        }
    }

    /// Factor reported in result tables; spectrum split has none.
    pub fn rho(&self) -> Option<f64> {
        match *self {
            Self::SpectrumSplit => None,
            other => Some(other.disaster_band_factor()),
        }
    }
}

impl fmt::Display for SilencingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::None => f.write_str("none"),
            Self::Complete => f.write_str("complete"),
            Self::Partial(rho) => write!(f, "partial:{rho}"),
            Self::SpectrumSplit => f.write_str("spectrum-split"),
        }
    }
}

impl FromStr for SilencingPolicy {
    type Err = Error;

    /// Accepts `none`, `complete`, `spectrum-split`, and `partial:<factor>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "none" => Ok(Self::None),
            "complete" => Ok(Self::Complete),
            "spectrum-split" => Ok(Self::SpectrumSplit),
            other => {
                let factor = other
                    .strip_prefix("partial:")
                    .and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::domain(format!("unknown silencing policy `{other}`")))?;
                Self::partial(factor)
            }
        }
    }
}

impl TryFrom<String> for SilencingPolicy {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SilencingPolicy> for String {
    fn from(p: SilencingPolicy) -> String {
        p.to_string()
    }
}
