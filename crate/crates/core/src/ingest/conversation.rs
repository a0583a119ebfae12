use std::collections::BTreeMap;

use super::IngestError;
use crate::model::{
    build_sociogram, LoudnessSample, ParticipantId, Roster, Sociogram, SociogramKind,
    SpeechSegment,
};

/// Directed conversation sociogram. Every utterance is taken as addressed to the
/// whole group, so a speaker with total speaking time `T` gets an edge of weight
/// `T` to every other participant.
pub fn build_conversation_sociogram(
    speech: &[SpeechSegment],
    roster: &Roster,
) -> Result<Sociogram, IngestError> {
    let mut durations: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for seg in speech {
        seg.validate()?;
        let i = roster
            .index_of(seg.speaker.as_str())
            .ok_or_else(|| crate::model::ModelError::UnknownParticipant(seg.speaker.to_string()))?;
        durations.entry(i).or_default().push(seg.duration());
    }

    let mut pairs = Vec::new();
    for (speaker, mut ds) in durations {
        ds.sort_by(f64::total_cmp);
        let total: f64 = ds.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let from = roster.participants()[speaker].as_str();
        for listener in roster.iter().filter(|p| p.as_str() != from) {
            pairs.push((from, listener.as_str(), total));
        }
    }
    Ok(build_sociogram(
        roster,
        true,
        SociogramKind::Conversation,
        &pairs,
    )?)
}

/// Picks the participant with the loudest mean amplitude over samples in
/// `[start, end)`. Ties go to the participant listed first in the roster.
pub fn attribute_speaker(
    window: (f64, f64),
    loudness: &[LoudnessSample],
    roster: &Roster,
) -> Result<ParticipantId, IngestError> {
    let (start, end) = window;
    if !(start.is_finite() && end.is_finite() && end > start) {
        return Err(IngestError::EmptyWindow { start, end });
    }
    let n = roster.len();
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); n];
    for s in loudness.iter().filter(|s| s.t >= start && s.t < end) {
        if let Some(i) = roster.index_of(s.participant.as_str()) {
            samples[i].push(s.rms);
        }
    }

    let mut best: Option<(usize, f64)> = None;
    for (i, vals) in samples.iter_mut().enumerate() {
        if vals.is_empty() {
            continue;
        }
        vals.sort_by(f64::total_cmp);
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        if best.is_none_or(|(_, m)| mean > m) {
            best = Some((i, mean));
        }
    }
    best.map(|(i, _)| roster.participants()[i].clone())
        .ok_or(IngestError::NoSamplesInWindow { start, end })
}

/// Attributes unlabelled speech windows with [`attribute_speaker`].
pub fn attribute_segments(
    windows: &[(f64, f64)],
    loudness: &[LoudnessSample],
    roster: &Roster,
) -> Result<Vec<SpeechSegment>, IngestError> {
    windows
        .iter()
        .map(|&(start, end)| {
            Ok(SpeechSegment {
                speaker: attribute_speaker((start, end), loudness, roster)?,
                start,
                end,
            })
        })
        .collect()
}
