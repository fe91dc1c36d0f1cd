//! Built-in scenarios for the cell configurations used throughout the docs.

use crate::error::{CliError, Result};
use crate::scenario::{parse_scenario, Overrides, Scenario};

pub const PRESETS: [(&str, &str); 6] = [
    ("fig2ab", include_str!("../presets/fig2ab.toml")),
    ("fig2cd", include_str!("../presets/fig2cd.toml")),
    ("fig3ab", include_str!("../presets/fig3ab.toml")),
    ("fig3cd", include_str!("../presets/fig3cd.toml")),
    ("fig4", include_str!("../presets/fig4.toml")),
    ("fig5", include_str!("../presets/fig5.toml")),
];

pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load_preset(name: &str, overrides: &Overrides) -> Result<Scenario> {
    let text = preset_text(name).ok_or_else(|| {
        let known: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
        CliError::config(format!("unknown preset {name:?}; known presets: {}", known.join(", ")))
    })?;
    parse_scenario(text, overrides)
}
