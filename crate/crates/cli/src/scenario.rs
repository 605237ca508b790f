//! Scenario files: the channel geometry for one run, stored as TOML with
//! per-receiver paired real/imaginary arrays.

use std::path::Path;

use ansec::model::ChannelSet;
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// On-disk schema.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    /// Transmit antenna count; every channel array must have this length.
    n_tx: usize,
    receivers: Vec<ReceiverEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReceiverEntry {
    channel_re: Vec<f64>,
    channel_im: Vec<f64>,
    /// Channel uncertainty ball radius; zero (the default) means the
    /// receiver's channel is known exactly.
    #[serde(default)]
    radius: f64,
}

/// A parsed scenario: the channel set plus its source path for reporting.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub path: String,
    pub channel_set: ChannelSet,
}

/// Loads and validates a scenario file.
///
/// TOML parse failures keep the parser's line anchor; semantic failures
/// name the offending receiver.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Scenario(format!("{}: {e}", path.display())))?;
    let file: ScenarioFile = toml::from_str(&text)
        .map_err(|e| CliError::Scenario(format!("{}: {e}", path.display())))?;

    let mut channels = Vec::with_capacity(file.receivers.len());
    let mut radii = Vec::with_capacity(file.receivers.len());
    for (i, rx) in file.receivers.iter().enumerate() {
        if rx.channel_re.len() != file.n_tx || rx.channel_im.len() != file.n_tx {
            return Err(CliError::Scenario(format!(
                "{}: receiver {}: expected {} real and {} imaginary entries, got {} and {}",
                path.display(),
                i + 1,
                file.n_tx,
                file.n_tx,
                rx.channel_re.len(),
                rx.channel_im.len()
            )));
        }
        channels.push(
            rx.channel_re
                .iter()
                .zip(&rx.channel_im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect::<Vec<_>>(),
        );
        radii.push(rx.radius);
    }
    let channel_set = ChannelSet::new(file.n_tx, channels, radii)
        .map_err(|e| CliError::Scenario(format!("{}: {e}", path.display())))?;
    Ok(Scenario {
        path: path.display().to_string(),
        channel_set,
    })
}
