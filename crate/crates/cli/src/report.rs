//! End-to-end analysis of one session directory into a self-contained report.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sociokit::characterize::{characterize, sweep_configurations, CharacteristicProfile, GroupScorecard};
use sociokit::ingest::{
    build_attention_sociogram, build_conversation_sociogram, build_proximity_sociogram,
    read_session_dir,
};
use sociokit::metrics::{compute_metrics, MetricsReport};
use sociokit::model::{ParticipantId, SessionLog, Sociogram, SociogramKind, WeightedEdge};
use sociokit::task::{compute_task_report, GroundTruth, TaskReport};

use crate::config::RunConfig;
use crate::error::CliError;

/// One value per sociogram kind, serialized in a fixed key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerKind<T> {
    pub conversation: T,
    pub proximity: T,
    pub attention: T,
}

impl<T> PerKind<T> {
    pub fn get(&self, kind: SociogramKind) -> &T {
        match kind {
            SociogramKind::Conversation => &self.conversation,
            SociogramKind::Proximity => &self.proximity,
            SociogramKind::Attention => &self.attention,
        }
    }

    pub fn try_map<U, E>(
        &self,
        mut f: impl FnMut(SociogramKind, &T) -> Result<U, E>,
    ) -> Result<PerKind<U>, E> {
        Ok(PerKind {
            conversation: f(SociogramKind::Conversation, &self.conversation)?,
            proximity: f(SociogramKind::Proximity, &self.proximity)?,
            attention: f(SociogramKind::Attention, &self.attention)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SociogramRecord {
    pub directed: bool,
    pub participants: Vec<ParticipantId>,
    pub edges: Vec<WeightedEdge>,
}

impl From<&Sociogram> for SociogramRecord {
    fn from(s: &Sociogram) -> Self {
        Self {
            directed: s.directed(),
            participants: s.roster().participants().to_vec(),
            edges: s.edges(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub sociograms: PerKind<SociogramRecord>,
    pub metrics: PerKind<MetricsReport>,
    pub profiles: PerKind<CharacteristicProfile>,
    pub scorecards: Vec<GroupScorecard>,
    pub task: Option<TaskReport>,
}

impl Report {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn build_sociograms(log: &SessionLog, cfg: &RunConfig) -> Result<PerKind<Sociogram>, CliError> {
    Ok(PerKind {
        conversation: build_conversation_sociogram(log.speech(), log.roster())?,
        proximity: build_proximity_sociogram(log.positions(), log.roster(), &cfg.proximity)?,
        attention: build_attention_sociogram(log.gaze(), log.roster(), &cfg.attention)?,
    })
}

pub fn load_ground_truth(path: &Path) -> Result<GroundTruth, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("ground truth {}: {e}", path.display())))
}

/// Task report for the session, or `None` when it has no interaction events.
pub fn task_report(log: &SessionLog, cfg: &RunConfig) -> Result<Option<TaskReport>, CliError> {
    if log.interactions().is_empty() {
        return Ok(None);
    }
    let truth = cfg.ground_truth.as_deref().map(load_ground_truth).transpose()?;
    Ok(Some(compute_task_report(
        log.interactions(),
        truth.as_ref(),
        cfg.override_mode,
    )?))
}

pub fn analyze_log(log: &SessionLog, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let sociograms = build_sociograms(log, cfg)?;
    let metrics = sociograms.try_map(|kind, s| {
        compute_metrics(s, &cfg.metrics).map_err(|source| CliError::Metrics {
            kind: kind.as_str(),
            source,
        })
    })?;
    let profiles =
        metrics.try_map(|_, m| Ok::<_, CliError>(characterize(m, &cfg.thresholds)))?;
    let profile_set: BTreeMap<SociogramKind, CharacteristicProfile> = SociogramKind::ALL
        .into_iter()
        .map(|k| (k, *profiles.get(k)))
        .collect();
    let scorecards = sweep_configurations(&profile_set, &cfg.weight_configs(), &cfg.tie_order)?;
    Ok(Report {
        config: cfg.clone(),
        sociograms: sociograms.try_map(|_, s| Ok::<_, CliError>(SociogramRecord::from(s)))?,
        metrics,
        profiles,
        scorecards,
        task: task_report(log, cfg)?,
    })
}

pub fn analyze(log_dir: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let log = read_session_dir(log_dir)?;
    analyze_log(&log, cfg)
}
