//! Benchmark presets shipped with the crate as versioned config files.

use crate::config::RawConfig;
use crate::error::{BenchError, Result};

pub const PRESETS: [(&str, &str); 4] = [
    ("paper_fig2", include_str!("../presets/paper_fig2.cfg")),
    ("paper_heavy_tails", include_str!("../presets/paper_heavy_tails.cfg")),
    ("paper_wlow_sweep", include_str!("../presets/paper_wlow_sweep.cfg")),
    ("desk_small", include_str!("../presets/desk_small.cfg")),
];

pub fn preset_text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            BenchError::Config(format!("unknown preset `{name}` (available: {})", names.join(", ")))
        })
}

pub fn preset(name: &str) -> Result<RawConfig> {
    RawConfig::parse(preset_text(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::ExperimentSpec;

    #[test]
    fn every_preset_parses() {
        for (name, _) in PRESETS {
            let spec = ExperimentSpec::from_config(&preset(name).unwrap()).unwrap();
            assert_eq!(spec.name, name);
        }
        assert!(preset("nope").is_err());
    }
}
