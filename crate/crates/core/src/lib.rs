//! Sociograms from multi-participant session logs and group-behavior
//! classification.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`ingest`] parses per-stream line-delimited logs and builds three
//!    sociograms: conversation (directed), proximity and shared attention
//!    (undirected). Edge weights are seconds of interaction.
//! 2. [`metrics`] computes weighted centralities, their spreads, path-length
//!    variability and edge connectivity for each sociogram.
//! 3. [`characterize`] maps each metrics report onto five categorical
//!    dimensions and scores the three profiles into a cohesive, fragmented or
//!    competitive group label.
//! 4. [`task`] summarizes grab/release streams into task-performance counts.
//!
//! [`synth`] produces seeded logs for archetypal groups.

pub mod characterize;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod synth;
pub mod task;

pub use characterize::{
    characterize, score, sweep_configurations, CharacteristicProfile, GroupCategory,
    GroupScorecard, ThresholdConfig, TieOrder, WeightConfig,
};
pub use metrics::{compute_metrics, MetricsConfig, MetricsReport};
pub use model::{ParticipantId, Roster, SessionLog, Sociogram, SociogramKind};
