//! Task-level measures derived from object grab/release streams.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Action, ObjectInteractionEvent};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TaskError {
    #[error("unbalanced grab/release sequence for object `{0}`")]
    UnbalancedGrabRelease(String),
    #[error("interaction log is empty")]
    EmptyLog,
    #[error("invalid ground truth: {0}")]
    InvalidGroundTruth(String),
}

/// Which labelled releases count as overriding an earlier label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverrideMode {
    /// The previous label on the object was set by someone else.
    #[default]
    DifferentParticipant,
    /// As above, and the new label differs from the previous one.
    DifferentParticipantAndLabel,
}

/// Correct category per object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, String>", into = "BTreeMap<String, String>")]
pub struct GroundTruth(BTreeMap<String, String>);

impl GroundTruth {
    pub fn new(map: BTreeMap<String, String>) -> Result<Self, TaskError> {
        if map.is_empty() {
            return Err(TaskError::InvalidGroundTruth("no objects".into()));
        }
        if let Some((obj, _)) = map.iter().find(|(_, c)| c.is_empty()) {
            return Err(TaskError::InvalidGroundTruth(format!(
                "empty category for `{obj}`"
            )));
        }
        Ok(Self(map))
    }

    pub fn get(&self, object: &str) -> Option<&str> {
        self.0.get(object).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<BTreeMap<String, String>> for GroundTruth {
    type Error = TaskError;

    fn try_from(map: BTreeMap<String, String>) -> Result<Self, Self::Error> {
        Self::new(map)
    }
}

impl From<GroundTruth> for BTreeMap<String, String> {
    fn from(t: GroundTruth) -> Self {
        t.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    /// Distinct (participant, object) pairs with at least one grab.
    pub images_grabbed: usize,
    pub total_grabs: usize,
    pub overrides: usize,
    pub override_mode: OverrideMode,
    pub distinct_labels_per_object: BTreeMap<String, usize>,
    pub label_changes_per_object: BTreeMap<String, usize>,
    /// Seconds from the first grab to the last release.
    pub completion_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    pub per_participant_grabs: BTreeMap<String, usize>,
}

impl TaskReport {
    pub fn total_label_changes(&self) -> usize {
        self.label_changes_per_object.values().sum()
    }

    pub fn total_distinct_labels(&self) -> usize {
        self.distinct_labels_per_object.values().sum()
    }
}

pub fn compute_task_report(
    interactions: &[ObjectInteractionEvent],
    truth: Option<&GroundTruth>,
    mode: OverrideMode,
) -> Result<TaskReport, TaskError> {
    if interactions.is_empty() {
        return Err(TaskError::EmptyLog);
    }
    let mut events: Vec<&ObjectInteractionEvent> = interactions.iter().collect();
    events.sort_by(|a, b| {
        a.t.total_cmp(&b.t)
            .then_with(|| a.object_id.cmp(&b.object_id))
            .then_with(|| a.participant.cmp(&b.participant))
            .then_with(|| a.action.cmp(&b.action))
            .then_with(|| a.label_at_release.cmp(&b.label_at_release))
    });

    let mut holding: HashMap<(&str, &str), bool> = HashMap::new();
    let mut grabbed_pairs: BTreeSet<(&str, &str)> = BTreeSet::new();
    let mut per_participant_grabs: BTreeMap<String, usize> = BTreeMap::new();
    let mut total_grabs = 0;
    let mut overrides = 0;
    // object -> (label, labeller) of the latest labelled release
    let mut current: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    let mut labels_seen: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let mut label_changes: BTreeMap<String, usize> = BTreeMap::new();
    let mut first_grab: Option<f64> = None;
    let mut last_release: Option<f64> = None;

    for e in &events {
        let who = e.participant.as_str();
        let obj = e.object_id.as_str();
        let held = holding.entry((who, obj)).or_insert(false);
        match e.action {
            Action::Grab => {
                if *held {
                    return Err(TaskError::UnbalancedGrabRelease(obj.to_string()));
                }
                *held = true;
                total_grabs += 1;
                grabbed_pairs.insert((who, obj));
                *per_participant_grabs.entry(who.to_string()).or_default() += 1;
                first_grab.get_or_insert(e.t);
            }
            Action::Release => {
                if !*held {
                    return Err(TaskError::UnbalancedGrabRelease(obj.to_string()));
                }
                *held = false;
                last_release = Some(e.t);
                if let Some(label) = e.label_at_release.as_deref() {
                    if let Some(&(prev_label, prev_who)) = current.get(obj) {
                        let counts = match mode {
                            OverrideMode::DifferentParticipant => prev_who != who,
                            OverrideMode::DifferentParticipantAndLabel => {
                                prev_who != who && prev_label != label
                            }
                        };
                        if counts {
                            overrides += 1;
                        }
                    }
                    current.insert(obj, (label, who));
                    labels_seen.entry(obj).or_default().insert(label);
                    *label_changes.entry(obj.to_string()).or_default() += 1;
                }
            }
        }
    }
    if let Some(((_, obj), _)) = holding.iter().find(|(_, &held)| held) {
        return Err(TaskError::UnbalancedGrabRelease(obj.to_string()));
    }

    let completion_time = match (first_grab, last_release) {
        (Some(start), Some(end)) => (end - start).max(0.0),
        _ => 0.0,
    };
    let accuracy = truth.map(|truth| {
        let correct = truth
            .0
            .iter()
            .filter(|(obj, cat)| current.get(obj.as_str()).map(|(l, _)| *l) == Some(cat.as_str()))
            .count();
        correct as f64 / truth.len() as f64
    });

    Ok(TaskReport {
        images_grabbed: grabbed_pairs.len(),
        total_grabs,
        overrides,
        override_mode: mode,
        distinct_labels_per_object: labels_seen
            .into_iter()
            .map(|(o, s)| (o.to_string(), s.len()))
            .collect(),
        label_changes_per_object: label_changes,
        completion_time,
        accuracy,
        per_participant_grabs,
    })
}
