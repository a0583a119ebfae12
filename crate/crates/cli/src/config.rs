//! Run configuration: every tunable of the pipeline in one JSON document.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use sociokit::characterize::{TieOrder, WeightConfig};
use sociokit::ingest::{AttentionConfig, ProximityConfig};
use sociokit::task::OverrideMode;
use sociokit::{MetricsConfig, ThresholdConfig};

use crate::error::CliError;

/// Fully resolved settings for `analyze`, `score`, `export` and
/// `task-metrics`. Missing keys take their defaults; unknown keys are errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub proximity: ProximityConfig,
    pub attention: AttentionConfig,
    pub metrics: MetricsConfig,
    pub thresholds: ThresholdConfig,
    /// Weight configurations to score under. Entries are preset names or
    /// explicit `{conversation, proximity, attention}` objects.
    pub weights: Vec<WeightEntry>,
    pub tie_order: TieOrder,
    pub override_mode: OverrideMode,
    pub ground_truth: Option<PathBuf>,
    /// Report destination; standard output when absent.
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            proximity: ProximityConfig::default(),
            attention: AttentionConfig::default(),
            metrics: MetricsConfig::default(),
            thresholds: ThresholdConfig::default(),
            weights: WeightConfig::all_presets()
                .into_iter()
                .map(WeightEntry)
                .collect(),
            tie_order: TieOrder::default(),
            override_mode: OverrideMode::default(),
            ground_truth: None,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Config file contents if given, defaults otherwise.
    pub fn load_or_default(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.proximity.validate()?;
        self.attention.validate()?;
        self.metrics.validate()?;
        Ok(())
    }

    /// Replaces the weight list from a `--preset` value: a preset name or `all`.
    pub fn apply_preset_flag(&mut self, preset: &str) -> Result<(), CliError> {
        self.weights = if preset == "all" {
            WeightConfig::all_presets().into_iter().map(WeightEntry).collect()
        } else {
            vec![WeightEntry(WeightConfig::preset(preset)?)]
        };
        Ok(())
    }

    pub fn weight_configs(&self) -> Vec<WeightConfig> {
        self.weights.iter().map(|w| w.0.clone()).collect()
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }
}

/// One weight configuration, written either as a preset name or as an object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Value", into = "WeightConfig")]
pub struct WeightEntry(pub WeightConfig);

impl TryFrom<Value> for WeightEntry {
    type Error = String;

    fn try_from(v: Value) -> Result<Self, Self::Error> {
        match v {
            Value::String(name) => WeightConfig::preset(&name).map_err(|e| e.to_string()),
            other => serde_json::from_value(other).map_err(|e| e.to_string()),
        }
        .map(WeightEntry)
    }
}

impl From<WeightEntry> for WeightConfig {
    fn from(w: WeightEntry) -> Self {
        w.0
    }
}
