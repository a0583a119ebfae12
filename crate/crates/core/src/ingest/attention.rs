use std::collections::BTreeMap;

use super::{AttentionConfig, IngestError};
use crate::model::{build_sociogram, GazeEvent, ModelError, Roster, Sociogram, SociogramKind};

/// Undirected shared-attention sociogram.
///
/// For each object and each pair of participants, every maximal interval in
/// which both gaze at the object counts if it is strictly longer than
/// `cfg.min_overlap`. The edge weight is the sum over objects of qualifying
/// overlap lengths.
pub fn build_attention_sociogram(
    gaze: &[GazeEvent],
    roster: &Roster,
    cfg: &AttentionConfig,
) -> Result<Sociogram, IngestError> {
    cfg.validate()?;
    let n = roster.len();

    // object -> participant index -> raw intervals
    let mut by_object: BTreeMap<&str, Vec<Vec<(f64, f64)>>> = BTreeMap::new();
    for g in gaze {
        g.validate()?;
        let i = roster
            .index_of(g.participant.as_str())
            .ok_or_else(|| ModelError::UnknownParticipant(g.participant.to_string()))?;
        by_object
            .entry(g.object_id.as_str())
            .or_insert_with(|| vec![Vec::new(); n])[i]
            .push((g.start, g.end));
    }

    let mut totals = vec![vec![0.0f64; n]; n];
    for per_participant in by_object.into_values() {
        let merged: Vec<Vec<(f64, f64)>> = per_participant.into_iter().map(merge).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for (s, e) in intersect(&merged[i], &merged[j]) {
                    let len = e - s;
                    if len > cfg.min_overlap {
                        totals[i][j] += len;
                    }
                }
            }
        }
    }

    let ids = roster.participants();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if totals[i][j] > 0.0 {
                pairs.push((ids[i].as_str(), ids[j].as_str(), totals[i][j]));
            }
        }
    }
    Ok(build_sociogram(roster, false, SociogramKind::Attention, &pairs)?)
}

/// Sorts and unions intervals; touching intervals are joined.
fn merge(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (s, e) in intervals {
        match out.last_mut() {
            Some(last) if s <= last.1 => last.1 = last.1.max(e),
            _ => out.push((s, e)),
        }
    }
    out
}

/// Intersection of two sorted, disjoint interval lists.
fn intersect(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let s = a[i].0.max(b[j].0);
        let e = a[i].1.min(b[j].1);
        if e > s {
            out.push((s, e));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}
