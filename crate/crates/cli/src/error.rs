use std::path::PathBuf;

use thiserror::Error;

use sociokit::characterize::CharacterizeError;
use sociokit::ingest::IngestError;
use sociokit::metrics::MetricsError;
use sociokit::synth::SynthError;
use sociokit::task::TaskError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid profiles file: {0}")]
    Profiles(String),
    #[error("unsupported export format `{0}` (expected `dot` or `edge-list`)")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{kind} sociogram: {source}")]
    Metrics {
        kind: &'static str,
        #[source]
        source: MetricsError,
    },
    #[error(transparent)]
    Characterize(#[from] CharacterizeError),
    #[error(transparent)]
    Task(#[from] TaskError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

impl From<MetricsError> for CliError {
    fn from(source: MetricsError) -> Self {
        CliError::Metrics { kind: "metrics", source }
    }
}

impl CliError {
    /// 2 for numeric failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Metrics {
                source: MetricsError::NotConverged { .. } | MetricsError::SingularSystem(_),
                ..
            } => 2,
            _ => 1,
        }
    }
}
