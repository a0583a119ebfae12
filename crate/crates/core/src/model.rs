//! Shared domain types: participants, raw event records and weighted sociograms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("participant id must be non-empty")]
    EmptyParticipantId,
    #[error("roster needs at least 2 participants, got {0}")]
    RosterTooSmall(usize),
    #[error("duplicate participant `{0}` in roster")]
    DuplicateParticipant(String),
    #[error("unknown participant `{0}`")]
    UnknownParticipant(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("edge {from} -> {to} has non-positive or non-finite weight {weight}")]
    NonPositiveWeight { from: String, to: String, weight: f64 },
    #[error("{kind} sociograms must be {}", if *.directed { "directed" } else { "undirected" })]
    KindDirectionMismatch { kind: SociogramKind, directed: bool },
    #[error("invalid {record}: {reason}")]
    InvalidRecord { record: &'static str, reason: String },
}

/// Opaque participant identifier ("A", "B", ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ParticipantId(String);

impl ParticipantId {
    pub fn new(id: impl Into<String>) -> Result<Self, ModelError> {
        let id = id.into();
        if id.is_empty() {
            return Err(ModelError::EmptyParticipantId);
        }
        Ok(Self(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ParticipantId {
    type Error = ModelError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<ParticipantId> for String {
    fn from(id: ParticipantId) -> Self {
        id.0
    }
}

impl fmt::Display for ParticipantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Ordered, duplicate-free set of participants. Its order is the canonical node
/// order for every matrix, report and export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RosterRepr", into = "RosterRepr")]
pub struct Roster {
    participants: Vec<ParticipantId>,
}

#[derive(Serialize, Deserialize)]
struct RosterRepr {
    participants: Vec<ParticipantId>,
}

impl TryFrom<RosterRepr> for Roster {
    type Error = ModelError;

    fn try_from(repr: RosterRepr) -> Result<Self, Self::Error> {
        Roster::new(repr.participants)
    }
}

impl From<Roster> for RosterRepr {
    fn from(roster: Roster) -> Self {
        RosterRepr {
            participants: roster.participants,
        }
    }
}

impl Roster {
    pub fn new(participants: Vec<ParticipantId>) -> Result<Self, ModelError> {
        if participants.len() < 2 {
            return Err(ModelError::RosterTooSmall(participants.len()));
        }
        let mut seen = HashSet::new();
        for p in &participants {
            if !seen.insert(p.as_str()) {
                return Err(ModelError::DuplicateParticipant(p.to_string()));
            }
        }
        Ok(Self { participants })
    }

    /// Convenience constructor from string ids.
    pub fn from_ids<S: AsRef<str>>(ids: &[S]) -> Result<Self, ModelError> {
        let participants = ids
            .iter()
            .map(|s| ParticipantId::new(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(participants)
    }

    pub fn len(&self) -> usize {
        self.participants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.participants.is_empty()
    }

    pub fn participants(&self) -> &[ParticipantId] {
        &self.participants
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.participants.iter().position(|p| p.as_str() == id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    pub fn get(&self, index: usize) -> Option<&ParticipantId> {
        self.participants.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ParticipantId> {
        self.participants.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeechSegment {
    pub speaker: ParticipantId,
    pub start: f64,
    pub end: f64,
}

impl SpeechSegment {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_interval("speech segment", self.start, self.end)?;
        if self.start < 0.0 {
            return Err(invalid("speech segment", "start must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GazeEvent {
    pub participant: ParticipantId,
    #[serde(rename = "object")]
    pub object_id: String,
    pub start: f64,
    pub end: f64,
}

impl GazeEvent {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.object_id.is_empty() {
            return Err(invalid("gaze event", "object id must be non-empty"));
        }
        check_interval("gaze event", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionSample {
    pub participant: ParticipantId,
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl PositionSample {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.t.is_finite() && self.x.is_finite() && self.y.is_finite()) {
            return Err(invalid("position sample", "non-finite value"));
        }
        if self.t < 0.0 {
            return Err(invalid("position sample", "t must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Grab,
    Release,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectInteractionEvent {
    pub participant: ParticipantId,
    #[serde(rename = "object")]
    pub object_id: String,
    pub action: Action,
    pub t: f64,
    /// Category the object was dropped into; only present on releases.
    #[serde(rename = "label", default, skip_serializing_if = "Option::is_none")]
    pub label_at_release: Option<String>,
}

impl ObjectInteractionEvent {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.object_id.is_empty() {
            return Err(invalid("interaction", "object id must be non-empty"));
        }
        if !self.t.is_finite() || self.t < 0.0 {
            return Err(invalid("interaction", "t must be finite and >= 0"));
        }
        match (self.action, &self.label_at_release) {
            (Action::Grab, Some(_)) => Err(invalid("interaction", "grab events carry no label")),
            (Action::Release, Some(l)) if l.is_empty() => {
                Err(invalid("interaction", "label must be non-empty"))
            }
            _ => Ok(()),
        }
    }
}

/// One microphone amplitude reading (unitless RMS).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoudnessSample {
    pub participant: ParticipantId,
    pub t: f64,
    pub rms: f64,
}

impl LoudnessSample {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !self.t.is_finite() || !self.rms.is_finite() || self.rms < 0.0 {
            return Err(invalid("loudness sample", "t and rms must be finite, rms >= 0"));
        }
        Ok(())
    }
}

/// All raw event streams of one group session.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionLog {
    roster: Roster,
    speech: Vec<SpeechSegment>,
    gaze: Vec<GazeEvent>,
    positions: Vec<PositionSample>,
    interactions: Vec<ObjectInteractionEvent>,
    loudness: Option<Vec<LoudnessSample>>,
}

impl SessionLog {
    /// Validates every record against the roster and sorts each stream by time.
    pub fn new(
        roster: Roster,
        mut speech: Vec<SpeechSegment>,
        mut gaze: Vec<GazeEvent>,
        mut positions: Vec<PositionSample>,
        mut interactions: Vec<ObjectInteractionEvent>,
        mut loudness: Option<Vec<LoudnessSample>>,
    ) -> Result<Self, ModelError> {
        let known = |p: &ParticipantId| {
            if roster.contains(p.as_str()) {
                Ok(())
            } else {
                Err(ModelError::UnknownParticipant(p.to_string()))
            }
        };
        for s in &speech {
            s.validate()?;
            known(&s.speaker)?;
        }
        for g in &gaze {
            g.validate()?;
            known(&g.participant)?;
        }
        for p in &positions {
            p.validate()?;
            known(&p.participant)?;
        }
        for i in &interactions {
            i.validate()?;
            known(&i.participant)?;
        }
        for l in loudness.iter().flatten() {
            l.validate()?;
            known(&l.participant)?;
        }

        speech.sort_by(|a, b| a.start.total_cmp(&b.start));
        gaze.sort_by(|a, b| a.start.total_cmp(&b.start));
        positions.sort_by(|a, b| a.t.total_cmp(&b.t));
        interactions.sort_by(|a, b| a.t.total_cmp(&b.t));
        if let Some(l) = loudness.as_mut() {
            l.sort_by(|a, b| a.t.total_cmp(&b.t));
        }

        Ok(Self {
            roster,
            speech,
            gaze,
            positions,
            interactions,
            loudness,
        })
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn speech(&self) -> &[SpeechSegment] {
        &self.speech
    }

    pub fn gaze(&self) -> &[GazeEvent] {
        &self.gaze
    }

    pub fn positions(&self) -> &[PositionSample] {
        &self.positions
    }

    pub fn interactions(&self) -> &[ObjectInteractionEvent] {
        &self.interactions
    }

    pub fn loudness(&self) -> Option<&[LoudnessSample]> {
        self.loudness.as_deref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SociogramKind {
    Conversation,
    Proximity,
    Attention,
}

impl SociogramKind {
    pub const ALL: [SociogramKind; 3] = [
        SociogramKind::Conversation,
        SociogramKind::Proximity,
        SociogramKind::Attention,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SociogramKind::Conversation => "conversation",
            SociogramKind::Proximity => "proximity",
            SociogramKind::Attention => "attention",
        }
    }

    /// Conversation sociograms are directed; the other two are undirected.
    pub fn is_directed(self) -> bool {
        matches!(self, SociogramKind::Conversation)
    }
}

impl fmt::Display for SociogramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SociogramKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conversation" => Ok(SociogramKind::Conversation),
            "proximity" => Ok(SociogramKind::Proximity),
            "attention" => Ok(SociogramKind::Attention),
            other => Err(format!("unknown sociogram kind `{other}`")),
        }
    }
}

/// A weighted interaction graph over a roster. Weights are seconds of interaction.
///
/// Edges are keyed by roster indices; undirected edges are stored once with the
/// smaller index first. Zero-weight pairs are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Sociogram {
    roster: Roster,
    directed: bool,
    kind: SociogramKind,
    edges: BTreeMap<(usize, usize), f64>,
}

/// One edge of a sociogram, in participant terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub from: ParticipantId,
    pub to: ParticipantId,
    pub weight: f64,
}

/// Builds a validated sociogram. Duplicate pairs are summed; for undirected
/// graphs `(a, b)` and `(b, a)` are the same pair.
pub fn build_sociogram<S: AsRef<str>>(
    roster: &Roster,
    directed: bool,
    kind: SociogramKind,
    weighted_pairs: &[(S, S, f64)],
) -> Result<Sociogram, ModelError> {
    if kind.is_directed() != directed {
        return Err(ModelError::KindDirectionMismatch {
            kind,
            directed: kind.is_directed(),
        });
    }
    let mut contributions: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for (from, to, weight) in weighted_pairs {
        let (from, to) = (from.as_ref(), to.as_ref());
        let i = roster
            .index_of(from)
            .ok_or_else(|| ModelError::UnknownParticipant(from.to_string()))?;
        let j = roster
            .index_of(to)
            .ok_or_else(|| ModelError::UnknownParticipant(to.to_string()))?;
        if i == j {
            return Err(ModelError::SelfLoop(from.to_string()));
        }
        if !weight.is_finite() || *weight <= 0.0 {
            return Err(ModelError::NonPositiveWeight {
                from: from.to_string(),
                to: to.to_string(),
                weight: *weight,
            });
        }
        let key = if directed { (i, j) } else { (i.min(j), i.max(j)) };
        contributions.entry(key).or_default().push(*weight);
    }
    // Summing in sorted order keeps the result independent of input order.
    let edges = contributions
        .into_iter()
        .map(|(key, mut ws)| {
            ws.sort_by(f64::total_cmp);
            (key, ws.into_iter().sum())
        })
        .collect();
    Ok(Sociogram {
        roster: roster.clone(),
        directed,
        kind,
        edges,
    })
}

impl Sociogram {
    /// An edgeless sociogram of the given kind.
    pub fn empty(roster: &Roster, kind: SociogramKind) -> Self {
        Sociogram {
            roster: roster.clone(),
            directed: kind.is_directed(),
            kind,
            edges: BTreeMap::new(),
        }
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn kind(&self) -> SociogramKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.roster.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Stored edges as `((from, to), weight)` in roster-index order.
    pub fn index_edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().map(|(&k, &w)| (k, w))
    }

    pub fn edges(&self) -> Vec<WeightedEdge> {
        self.index_edges()
            .map(|((i, j), weight)| WeightedEdge {
                from: self.roster.participants()[i].clone(),
                to: self.roster.participants()[j].clone(),
                weight,
            })
            .collect()
    }

    /// Weight of the stored edge between two participants (order matters only
    /// for directed sociograms).
    pub fn weight(&self, from: &str, to: &str) -> Option<f64> {
        let i = self.roster.index_of(from)?;
        let j = self.roster.index_of(to)?;
        let key = if self.directed { (i, j) } else { (i.min(j), i.max(j)) };
        self.edges.get(&key).copied()
    }

    /// Dense `n x n` weight matrix in roster order; `A[i][j]` is the weight of
    /// edge `i -> j` or 0.
    pub fn adjacency(&self) -> Vec<Vec<f64>> {
        let n = self.node_count();
        let mut a = vec![vec![0.0; n]; n];
        for (&(i, j), &w) in &self.edges {
            a[i][j] = w;
            if !self.directed {
                a[j][i] = w;
            }
        }
        a
    }

    /// `A + Aᵀ` for directed sociograms, `A` otherwise.
    #[allow(clippy::needless_range_loop)]
    pub fn symmetric_adjacency(&self) -> Vec<Vec<f64>> {
        let mut a = self.adjacency();
        if self.directed {
            let n = a.len();
            for i in 0..n {
                for j in (i + 1)..n {
                    let s = a[i][j] + a[j][i];
                    a[i][j] = s;
                    a[j][i] = s;
                }
            }
        }
        a
    }

    /// Weak connectivity: edge direction is ignored.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for &(i, j) in self.edges.keys() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                components -= 1;
            }
        }
        components == 1
    }

    /// Same structure with every weight multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Sociogram {
        assert!(factor.is_finite() && factor > 0.0, "scale factor must be positive");
        Sociogram {
            edges: self.edges.iter().map(|(&k, &w)| (k, w * factor)).collect(),
            ..self.clone()
        }
    }
}

fn invalid(record: &'static str, reason: &str) -> ModelError {
    ModelError::InvalidRecord {
        record,
        reason: reason.to_string(),
    }
}

fn check_interval(record: &'static str, start: f64, end: f64) -> Result<(), ModelError> {
    if !start.is_finite() || !end.is_finite() {
        return Err(invalid(record, "non-finite time"));
    }
    if end <= start {
        return Err(invalid(record, "end must be greater than start"));
    }
    Ok(())
}
