//! Experiment presets shipped with the crate.

use std::fmt;
use std::str::FromStr;

use crate::config::{parse_config, ExperimentConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    EdgeCdf,
    InnerCdfNarrow,
    InnerCdfWide,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::EdgeCdf, Preset::InnerCdfNarrow, Preset::InnerCdfWide];

    pub fn name(self) -> &'static str {
        match self {
            Preset::EdgeCdf => "edge",
            Preset::InnerCdfNarrow => "inner-narrow",
            Preset::InnerCdfWide => "inner-wide",
        }
    }

    fn source(self) -> &'static str {
        match self {
            Preset::EdgeCdf => include_str!("../presets/edge_cdf.toml"),
            Preset::InnerCdfNarrow => include_str!("../presets/inner_cdf_narrow.toml"),
            Preset::InnerCdfWide => include_str!("../presets/inner_cdf_wide.toml"),
        }
    }

    pub fn config(self) -> ExperimentConfig {
        parse_config(self.source()).expect("shipped presets are valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            Error::argument(format!(
                "unknown preset `{s}` (expected edge, inner-narrow or inner-wide)"
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for p in Preset::ALL {
            let c = p.config();
            assert!(!c.name.is_empty());
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert_eq!(Preset::InnerCdfWide.config().subcarriers1(), vec![120, 120, 672]);
    }
}
