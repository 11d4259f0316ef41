//! Configurations shipped with the binary, one per reproduced figure panel.

use crate::config::ExperimentConfig;
use crate::error::CliError;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../configs/", $name, ".toml")))),*]
    };
}

/// `(name, TOML source)` in listing order.
pub const BUNDLED: &[(&str, &str)] = bundled![
    "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig3a", "fig3b", "fig3c", "fig4", "fig4b", "fig4c", "fig4d",
    "fig5", "fig5a", "fig6", "fig7", "fig8", "figA1", "figA2",
];

pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn get(name: &str) -> Option<Result<ExperimentConfig, CliError>> {
    source(name).map(ExperimentConfig::parse)
}

/// `(name, kind, description)` rows for `list`.
pub fn table() -> Result<Vec<(String, String, String)>, CliError> {
    BUNDLED
        .iter()
        .map(|(name, src)| {
            let c = ExperimentConfig::parse(src)?;
            let kind = toml::Value::try_from(c.kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            Ok((name.to_string(), kind, c.description.unwrap_or_default()))
        })
        .collect()
}
