//! Threshold characterization of metric reports and weighted group scoring.
//!
//! Each sociogram's metrics map to five categorical dimensions. Every
//! categorical value then votes, with its sociogram's weight, for one of three
//! group categories:
//!
//! | values                               | category    |
//! |--------------------------------------|-------------|
//! | `high`, `distributed`, `tight-knit`  | cohesive    |
//! | `low`, `fragile`, `loose-knit`       | fragmented  |
//! | `resilient`, `moderate`, `centralized` | competitive |
//!
//! The label is the highest-scoring category; ties are settled by a
//! configurable preference order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::MetricsReport;
use crate::model::SociogramKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharacterizeError {
    #[error("missing {0} sociogram profile")]
    MissingSociogram(SociogramKind),
    #[error("{0}")]
    InvalidWeights(String),
    #[error("unknown weight preset `{0}`")]
    UnknownPreset(String),
    #[error("tie order must list cohesive, fragmented and competitive exactly once")]
    InvalidTieOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cohesion {
    High,
    Moderate,
    Low,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Influence {
    High,
    Moderate,
    Low,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    Resilient,
    Moderate,
    Fragile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centralization {
    Centralized,
    Distributed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clustering {
    #[serde(rename = "tight-knit")]
    TightKnit,
    #[serde(rename = "loose-knit")]
    LooseKnit,
}

impl Cohesion {
    pub const ALL: [Self; 3] = [Self::High, Self::Moderate, Self::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::High => "high",
            Self::Moderate => "moderate",
            Self::Low => "low",
        }
    }
}

impl Influence {
    pub const ALL: [Self; 3] = [Self::High, Self::Moderate, Self::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::High => "high",
            Self::Moderate => "moderate",
            Self::Low => "low",
        }
    }
}

impl Connectivity {
    pub const ALL: [Self; 3] = [Self::Resilient, Self::Moderate, Self::Fragile];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Resilient => "resilient",
            Self::Moderate => "moderate",
            Self::Fragile => "fragile",
        }
    }
}

impl Centralization {
    pub const ALL: [Self; 2] = [Self::Centralized, Self::Distributed];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Centralized => "centralized",
            Self::Distributed => "distributed",
        }
    }
}

impl Clustering {
    pub const ALL: [Self; 2] = [Self::TightKnit, Self::LooseKnit];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::TightKnit => "tight-knit",
            Self::LooseKnit => "loose-knit",
        }
    }
}

/// The five categorical dimensions of one sociogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacteristicProfile {
    pub cohesion: Cohesion,
    pub influence: Influence,
    pub connectivity: Connectivity,
    pub centralization: Centralization,
    pub clustering: Clustering,
    /// Set when the profile was assigned because the sociogram is disconnected.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub disconnected: bool,
}

impl CharacteristicProfile {
    pub fn new(
        cohesion: Cohesion,
        influence: Influence,
        connectivity: Connectivity,
        centralization: Centralization,
        clustering: Clustering,
    ) -> Self {
        Self {
            cohesion,
            influence,
            connectivity,
            centralization,
            clustering,
            disconnected: false,
        }
    }

    /// Profile assigned to disconnected sociograms.
    pub fn disconnected() -> Self {
        Self {
            disconnected: true,
            ..Self::new(
                Cohesion::Low,
                Influence::Low,
                Connectivity::Fragile,
                Centralization::Distributed,
                Clustering::LooseKnit,
            )
        }
    }

    /// The five vocabulary strings in dimension order.
    pub fn values(&self) -> [&'static str; 5] {
        [
            self.cohesion.as_str(),
            self.influence.as_str(),
            self.connectivity.as_str(),
            self.centralization.as_str(),
            self.clustering.as_str(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CohesionThresholds {
    pub high_max_clustering_variability: f64,
    pub high_max_eigenvector_variability: f64,
    pub moderate_max_clustering_variability: f64,
    pub moderate_max_eigenvector_variability: f64,
}

impl Default for CohesionThresholds {
    fn default() -> Self {
        Self {
            high_max_clustering_variability: 0.05,
            high_max_eigenvector_variability: 0.08,
            moderate_max_clustering_variability: 0.02,
            moderate_max_eigenvector_variability: 0.04,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InfluenceThresholds {
    pub high_min_mean_eigenvector: f64,
    pub high_max_pagerank_variability: f64,
    pub high_min_mean_katz: f64,
    pub moderate_min_mean_eigenvector: f64,
    pub moderate_max_pagerank_variability: f64,
}

impl Default for InfluenceThresholds {
    fn default() -> Self {
        Self {
            high_min_mean_eigenvector: 0.47,
            high_max_pagerank_variability: 0.02,
            high_min_mean_katz: 0.465,
            moderate_min_mean_eigenvector: 0.49,
            moderate_max_pagerank_variability: 0.065,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConnectivityThresholds {
    pub resilient_min_edge_connectivity: u32,
    pub resilient_max_path_length_variability: f64,
    pub moderate_min_edge_connectivity: u32,
    pub moderate_max_path_length_variability: f64,
}

impl Default for ConnectivityThresholds {
    fn default() -> Self {
        Self {
            resilient_min_edge_connectivity: 2,
            resilient_max_path_length_variability: 24.0,
            moderate_min_edge_connectivity: 1,
            moderate_max_path_length_variability: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CentralizationThresholds {
    pub centralized_min_betweenness_variability: f64,
}

impl Default for CentralizationThresholds {
    fn default() -> Self {
        Self {
            centralized_min_betweenness_variability: 0.35,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusteringThresholds {
    pub tight_knit_max_clustering_variability: f64,
}

impl Default for ClusteringThresholds {
    fn default() -> Self {
        Self {
            tight_knit_max_clustering_variability: 0.05,
        }
    }
}

/// Rule thresholds. `min` bounds are strict lower bounds (`>`), `max` bounds
/// strict upper bounds (`<`).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdConfig {
    pub cohesion: CohesionThresholds,
    pub influence: InfluenceThresholds,
    pub connectivity: ConnectivityThresholds,
    pub centralization: CentralizationThresholds,
    pub clustering: ClusteringThresholds,
}

impl ThresholdConfig {
    /// Rule branches that can never fire under this configuration, because an
    /// earlier branch's condition is implied by theirs.
    pub fn unreachable_branches(&self) -> Vec<String> {
        let mut out = Vec::new();
        let c = &self.cohesion;
        if c.moderate_max_clustering_variability <= c.high_max_clustering_variability
            && c.moderate_max_eigenvector_variability <= c.high_max_eigenvector_variability
        {
            out.push(
                "cohesion `moderate` is unreachable: its bounds are inside the `high` bounds"
                    .to_string(),
            );
        }
        let k = &self.connectivity;
        if k.moderate_min_edge_connectivity >= k.resilient_min_edge_connectivity
            && k.moderate_max_path_length_variability <= k.resilient_max_path_length_variability
        {
            out.push(
                "connectivity `moderate` is unreachable: its bounds are inside the `resilient` bounds"
                    .to_string(),
            );
        }
        // Influence `high` has an extra Katz condition, so `moderate` is never
        // fully shadowed.
        out
    }
}

/// Assigns the five categorical dimensions from one metrics report, evaluating
/// each rule in order. Disconnected reports get [`CharacteristicProfile::disconnected`].
pub fn characterize(metrics: &MetricsReport, cfg: &ThresholdConfig) -> CharacteristicProfile {
    let Some(m) = metrics.values.as_ref().filter(|_| metrics.connected) else {
        return CharacteristicProfile::disconnected();
    };

    let c = &cfg.cohesion;
    let cohesion = if m.clustering_variability < c.high_max_clustering_variability
        && m.eigenvector_variability < c.high_max_eigenvector_variability
    {
        Cohesion::High
    } else if m.clustering_variability < c.moderate_max_clustering_variability
        && m.eigenvector_variability < c.moderate_max_eigenvector_variability
    {
        Cohesion::Moderate
    } else {
        Cohesion::Low
    };

    let i = &cfg.influence;
    let influence = if m.mean_eigenvector > i.high_min_mean_eigenvector
        && m.pagerank_variability < i.high_max_pagerank_variability
        && m.mean_katz > i.high_min_mean_katz
    {
        Influence::High
    } else if m.mean_eigenvector > i.moderate_min_mean_eigenvector
        && m.pagerank_variability < i.moderate_max_pagerank_variability
    {
        Influence::Moderate
    } else {
        Influence::Low
    };

    let k = &cfg.connectivity;
    let connectivity = if m.edge_connectivity > k.resilient_min_edge_connectivity
        && m.path_length_variability < k.resilient_max_path_length_variability
    {
        Connectivity::Resilient
    } else if m.edge_connectivity > k.moderate_min_edge_connectivity
        && m.path_length_variability < k.moderate_max_path_length_variability
    {
        Connectivity::Moderate
    } else {
        Connectivity::Fragile
    };

    let centralization = if m.betweenness_variability
        > cfg.centralization.centralized_min_betweenness_variability
    {
        Centralization::Centralized
    } else {
        Centralization::Distributed
    };

    let clustering =
        if m.clustering_variability < cfg.clustering.tight_knit_max_clustering_variability {
            Clustering::TightKnit
        } else {
            Clustering::LooseKnit
        };

    CharacteristicProfile::new(cohesion, influence, connectivity, centralization, clustering)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupCategory {
    Cohesive,
    Fragmented,
    Competitive,
}

impl GroupCategory {
    pub const ALL: [GroupCategory; 3] = [
        GroupCategory::Cohesive,
        GroupCategory::Fragmented,
        GroupCategory::Competitive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupCategory::Cohesive => "cohesive",
            GroupCategory::Fragmented => "fragmented",
            GroupCategory::Competitive => "competitive",
        }
    }
}

impl fmt::Display for GroupCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const COHESIVE_VALUES: [&str; 3] = ["high", "distributed", "tight-knit"];
pub const FRAGMENTED_VALUES: [&str; 3] = ["low", "fragile", "loose-knit"];
pub const COMPETITIVE_VALUES: [&str; 3] = ["resilient", "moderate", "centralized"];

/// Category a characteristic value votes for.
pub fn category_of(value: &str) -> Option<GroupCategory> {
    if COHESIVE_VALUES.contains(&value) {
        Some(GroupCategory::Cohesive)
    } else if FRAGMENTED_VALUES.contains(&value) {
        Some(GroupCategory::Fragmented)
    } else if COMPETITIVE_VALUES.contains(&value) {
        Some(GroupCategory::Competitive)
    } else {
        None
    }
}

/// Checks that the three value sets partition the full characteristic
/// vocabulary: every value lands in exactly one set and no set names a value
/// outside the vocabulary.
pub fn verify_category_partition() -> Result<(), String> {
    let mut vocabulary: Vec<&str> = Vec::new();
    vocabulary.extend(Cohesion::ALL.map(Cohesion::as_str));
    vocabulary.extend(Influence::ALL.map(Influence::as_str));
    vocabulary.extend(Connectivity::ALL.map(Connectivity::as_str));
    vocabulary.extend(Centralization::ALL.map(Centralization::as_str));
    vocabulary.extend(Clustering::ALL.map(Clustering::as_str));
    for value in &vocabulary {
        let hits = [&COHESIVE_VALUES, &FRAGMENTED_VALUES, &COMPETITIVE_VALUES]
            .iter()
            .filter(|set| set.contains(value))
            .count();
        if hits != 1 {
            return Err(format!("value `{value}` appears in {hits} category sets"));
        }
    }
    for value in COHESIVE_VALUES
        .iter()
        .chain(&FRAGMENTED_VALUES)
        .chain(&COMPETITIVE_VALUES)
    {
        if !vocabulary.contains(value) {
            return Err(format!("category value `{value}` is not in the vocabulary"));
        }
    }
    Ok(())
}

/// Non-negative per-sociogram weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SociogramWeights {
    pub conversation: f64,
    pub proximity: f64,
    pub attention: f64,
}

impl SociogramWeights {
    pub fn get(&self, kind: SociogramKind) -> f64 {
        match kind {
            SociogramKind::Conversation => self.conversation,
            SociogramKind::Proximity => self.proximity,
            SociogramKind::Attention => self.attention,
        }
    }

    pub fn total(&self) -> f64 {
        self.conversation + self.proximity + self.attention
    }
}

/// Named weight presets, in sweep order.
pub const PRESETS: [(&str, SociogramWeights); 7] = [
    ("equal", weights(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)),
    ("conversation-focused", weights(0.5, 0.25, 0.25)),
    ("proximity-focused", weights(0.25, 0.5, 0.25)),
    ("attention-focused", weights(0.25, 0.25, 0.5)),
    ("conv-prox", weights(0.4, 0.4, 0.2)),
    ("conv-att", weights(0.4, 0.2, 0.4)),
    ("prox-att", weights(0.2, 0.4, 0.4)),
];

const fn weights(conversation: f64, proximity: f64, attention: f64) -> SociogramWeights {
    SociogramWeights {
        conversation,
        proximity,
        attention,
    }
}

/// Validated weights summing to 1, optionally tagged with a preset name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightConfigRepr", into = "WeightConfigRepr")]
pub struct WeightConfig {
    preset: Option<String>,
    weights: SociogramWeights,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightConfigRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    conversation: f64,
    proximity: f64,
    attention: f64,
}

impl TryFrom<WeightConfigRepr> for WeightConfig {
    type Error = CharacterizeError;

    fn try_from(r: WeightConfigRepr) -> Result<Self, Self::Error> {
        let mut cfg = WeightConfig::custom(r.conversation, r.proximity, r.attention)?;
        cfg.preset = r.preset;
        Ok(cfg)
    }
}

impl From<WeightConfig> for WeightConfigRepr {
    fn from(c: WeightConfig) -> Self {
        WeightConfigRepr {
            preset: c.preset,
            conversation: c.weights.conversation,
            proximity: c.weights.proximity,
            attention: c.weights.attention,
        }
    }
}

impl WeightConfig {
    pub fn custom(
        conversation: f64,
        proximity: f64,
        attention: f64,
    ) -> Result<Self, CharacterizeError> {
        let w = weights(conversation, proximity, attention);
        for (name, v) in [
            ("conversation", conversation),
            ("proximity", proximity),
            ("attention", attention),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CharacterizeError::InvalidWeights(format!(
                    "{name} weight must be a finite number >= 0, got {v}"
                )));
            }
        }
        if (w.total() - 1.0).abs() > 1e-9 {
            return Err(CharacterizeError::InvalidWeights(format!(
                "weights must sum to 1 (got {})",
                w.total()
            )));
        }
        Ok(Self {
            preset: None,
            weights: w,
        })
    }

    pub fn preset(name: &str) -> Result<Self, CharacterizeError> {
        PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(n, w)| Self {
                preset: Some(n.to_string()),
                weights: *w,
            })
            .ok_or_else(|| CharacterizeError::UnknownPreset(name.to_string()))
    }

    pub fn equal() -> Self {
        Self::preset("equal").expect("equal preset exists")
    }

    pub fn all_presets() -> Vec<Self> {
        PRESETS
            .iter()
            .map(|(n, _)| Self::preset(n).expect("listed preset"))
            .collect()
    }

    pub fn preset_name(&self) -> Option<&str> {
        self.preset.as_deref()
    }

    pub fn weights(&self) -> SociogramWeights {
        self.weights
    }
}

/// Preference among categories tied for the top score, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GroupCategory>", into = "Vec<GroupCategory>")]
pub struct TieOrder([GroupCategory; 3]);

impl TieOrder {
    pub fn new(order: [GroupCategory; 3]) -> Result<Self, CharacterizeError> {
        let distinct = GroupCategory::ALL.iter().all(|c| order.contains(c));
        if !distinct {
            return Err(CharacterizeError::InvalidTieOrder);
        }
        Ok(Self(order))
    }

    pub fn categories(&self) -> &[GroupCategory; 3] {
        &self.0
    }
}

impl Default for TieOrder {
    fn default() -> Self {
        Self([
            GroupCategory::Fragmented,
            GroupCategory::Cohesive,
            GroupCategory::Competitive,
        ])
    }
}

impl TryFrom<Vec<GroupCategory>> for TieOrder {
    type Error = CharacterizeError;

    fn try_from(v: Vec<GroupCategory>) -> Result<Self, Self::Error> {
        let arr: [GroupCategory; 3] = v
            .try_into()
            .map_err(|_| CharacterizeError::InvalidTieOrder)?;
        Self::new(arr)
    }
}

impl From<TieOrder> for Vec<GroupCategory> {
    fn from(t: TieOrder) -> Self {
        t.0.to_vec()
    }
}

/// Scores within this fraction of the total weight count as tied.
pub const SCORE_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupScorecard {
    pub score_cohesive: f64,
    pub score_fragmented: f64,
    pub score_competitive: f64,
    pub label: GroupCategory,
    pub tie_break_applied: bool,
    pub config: WeightConfig,
}

/// Raw category scores before label assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategoryScores {
    pub cohesive: f64,
    pub fragmented: f64,
    pub competitive: f64,
}

impl CategoryScores {
    pub fn get(&self, c: GroupCategory) -> f64 {
        match c {
            GroupCategory::Cohesive => self.cohesive,
            GroupCategory::Fragmented => self.fragmented,
            GroupCategory::Competitive => self.competitive,
        }
    }

    /// Argmax under `tie_order`, plus whether more than one category shared the top.
    pub fn label(&self, tie_order: &TieOrder, total_weight: f64) -> (GroupCategory, bool) {
        let top = GroupCategory::ALL
            .iter()
            .map(|&c| self.get(c))
            .fold(f64::NEG_INFINITY, f64::max);
        let tol = SCORE_TIE_TOLERANCE * total_weight.abs().max(f64::MIN_POSITIVE);
        let tied: Vec<GroupCategory> = tie_order
            .categories()
            .iter()
            .copied()
            .filter(|&c| top - self.get(c) <= tol)
            .collect();
        (tied[0], tied.len() > 1)
    }
}

pub type ProfileSet = BTreeMap<SociogramKind, CharacteristicProfile>;

/// Accumulates category scores for arbitrary non-negative weights.
pub fn category_scores(
    profiles: &ProfileSet,
    weights: &SociogramWeights,
) -> Result<CategoryScores, CharacterizeError> {
    let mut scores = CategoryScores {
        cohesive: 0.0,
        fragmented: 0.0,
        competitive: 0.0,
    };
    for kind in SociogramKind::ALL {
        let profile = profiles
            .get(&kind)
            .ok_or(CharacterizeError::MissingSociogram(kind))?;
        let w = weights.get(kind);
        for value in profile.values() {
            match category_of(value).expect("vocabulary is partitioned") {
                GroupCategory::Cohesive => scores.cohesive += w,
                GroupCategory::Fragmented => scores.fragmented += w,
                GroupCategory::Competitive => scores.competitive += w,
            }
        }
    }
    Ok(scores)
}

/// Scores the three sociogram profiles and assigns the group label.
pub fn score(
    profiles: &ProfileSet,
    config: &WeightConfig,
    tie_order: &TieOrder,
) -> Result<GroupScorecard, CharacterizeError> {
    let w = config.weights();
    let scores = category_scores(profiles, &w)?;
    let (label, tie_break_applied) = scores.label(tie_order, w.total());
    Ok(GroupScorecard {
        score_cohesive: scores.cohesive,
        score_fragmented: scores.fragmented,
        score_competitive: scores.competitive,
        label,
        tie_break_applied,
        config: config.clone(),
    })
}

/// One scorecard per weight configuration, in input order.
pub fn sweep_configurations(
    profiles: &ProfileSet,
    presets: &[WeightConfig],
    tie_order: &TieOrder,
) -> Result<Vec<GroupScorecard>, CharacterizeError> {
    presets
        .iter()
        .map(|cfg| score(profiles, cfg, tie_order))
        .collect()
}
