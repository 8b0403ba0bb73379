//! Experiment front end for the BD-RIS full-duplex simulator: configuration
//! files, named presets, sweep execution, and CSV/SVG report emission.

use std::fmt;

use bdris_core::channel::ChannelError;

pub mod acceptance;
pub mod config;
pub mod preset;
pub mod report;
pub mod sweep;

pub use config::{parse_config, parse_config_str};
pub use preset::{Preset, PresetKind};
pub use sweep::{run_beams, run_sweep, BeamSweep, Scheme, SweepResult, SweepRow};

/// Front-end errors. `category()` yields the machine-readable tag printed on
/// stderr, so scripts can branch on failure kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse { line: usize, message: String },
    Validation { field: String, message: String },
    Io { path: String, message: String },
    UnknownPreset { name: String },
    Oracle { message: String },
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            Self::Parse { .. } => "config.parse",
            Self::Validation { .. } => "config.validate",
            Self::Io { .. } => "io",
            Self::UnknownPreset { .. } => "preset.unknown",
            Self::Oracle { .. } => "oracle",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse { line, message } => write!(f, "line {line}: {message}"),
            Self::Validation { field, message } => write!(f, "field {field}: {message}"),
            Self::Io { path, message } => write!(f, "{path}: {message}"),
            Self::UnknownPreset { name } => {
                write!(f, "unknown preset {name:?}; available: ")?;
                let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
                write!(f, "{}", names.join(", "))
            }
            Self::Oracle { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::InvalidConfig { field, reason } => {
                Self::Validation { field: field.to_string(), message: reason }
            }
            ChannelError::InvalidArgument { what } => {
                Self::Validation { field: "argument".to_string(), message: what }
            }
        }
    }
}
