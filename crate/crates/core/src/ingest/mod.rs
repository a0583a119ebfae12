//! Session-log ingestion and the three sensor-to-sociogram pipelines.

mod attention;
mod conversation;
mod proximity;
pub mod records;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::ModelError;

pub use attention::build_attention_sociogram;
pub use conversation::{attribute_segments, attribute_speaker, build_conversation_sociogram};
pub use proximity::build_proximity_sociogram;
pub use records::{parse_session_log, read_session_dir, write_session_log, LogPaths};

/// 1.5 ft in meters.
pub const INTIMATE_SPACE_METERS: f64 = 0.4572;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("missing {stream} stream (expected {})", path.display())]
    MissingStream { stream: &'static str, path: PathBuf },
    #[error("{stream} line {line}: field `{field}`: {message}")]
    Schema {
        stream: &'static str,
        line: usize,
        field: String,
        message: String,
    },
    #[error("{stream} line {line}: unknown participant `{id}`")]
    UnknownParticipant {
        stream: &'static str,
        line: usize,
        id: String,
    },
    #[error("no loudness samples in window [{start}, {end})")]
    NoSamplesInWindow { start: f64, end: f64 },
    #[error("empty attribution window [{start}, {end})")]
    EmptyWindow { start: f64, end: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Settings for the proximity pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProximityConfig {
    /// Meters; pairs at or below this distance count as close.
    pub threshold: f64,
    /// Resampling bin width in seconds.
    pub bin: f64,
    /// Seconds dropped from each end of the position stream.
    pub trim: f64,
}

impl Default for ProximityConfig {
    fn default() -> Self {
        Self {
            threshold: INTIMATE_SPACE_METERS,
            bin: 1.0,
            trim: 15.0,
        }
    }
}

impl ProximityConfig {
    pub fn validate(&self) -> Result<(), IngestError> {
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(IngestError::InvalidConfig("proximity threshold must be > 0".into()));
        }
        if !(self.bin.is_finite() && self.bin > 0.0) {
            return Err(IngestError::InvalidConfig("proximity bin must be > 0".into()));
        }
        if !(self.trim.is_finite() && self.trim >= 0.0) {
            return Err(IngestError::InvalidConfig("proximity trim must be >= 0".into()));
        }
        Ok(())
    }
}

/// Settings for the shared-attention pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttentionConfig {
    /// Seconds; an overlap interval must be strictly longer than this to count.
    pub min_overlap: f64,
}

impl Default for AttentionConfig {
    fn default() -> Self {
        Self { min_overlap: 0.013 }
    }
}

impl AttentionConfig {
    pub fn validate(&self) -> Result<(), IngestError> {
        if !(self.min_overlap.is_finite() && self.min_overlap >= 0.0) {
            return Err(IngestError::InvalidConfig("min_overlap must be >= 0".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = ProximityConfig::default();
        assert_eq!((p.threshold, p.bin, p.trim), (0.4572, 1.0, 15.0));
        assert!((p.threshold - 1.5 * 0.3048).abs() < 1e-12);
        assert_eq!(AttentionConfig::default().min_overlap, 0.013);
    }

    #[test]
    fn config_validation() {
        let bad = ProximityConfig {
            bin: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(AttentionConfig { min_overlap: -1.0 }.validate().is_err());
        assert!(serde_json::from_str::<ProximityConfig>(r#"{"radius": 1.0}"#).is_err());
    }
}
