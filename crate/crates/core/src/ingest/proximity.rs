use std::collections::BTreeMap;

use super::{IngestError, ProximityConfig};
use crate::model::{build_sociogram, ModelError, PositionSample, Roster, Sociogram, SociogramKind};

/// `(t, x, y)` of one position sample.
type Sample = (f64, f64, f64);

/// Undirected proximity sociogram.
///
/// The position stream is trimmed by `cfg.trim` seconds at both ends (relative
/// to its own first and last timestamps), resampled into `cfg.bin`-second bins
/// keeping the last sample per participant, and every bin in which two
/// participants are at most `cfg.threshold` meters apart adds `cfg.bin`
/// seconds to their edge.
pub fn build_proximity_sociogram(
    positions: &[PositionSample],
    roster: &Roster,
    cfg: &ProximityConfig,
) -> Result<Sociogram, IngestError> {
    cfg.validate()?;
    let n = roster.len();
    for p in positions {
        p.validate()?;
    }
    let Some(t_min) = positions.iter().map(|p| p.t).min_by(f64::total_cmp) else {
        return Ok(Sociogram::empty(roster, SociogramKind::Proximity));
    };
    let t_max = positions.iter().map(|p| p.t).max_by(f64::total_cmp).unwrap_or(t_min);
    let lo = t_min + cfg.trim;
    let hi = t_max - cfg.trim;

    // bin -> participant -> last (t, x, y)
    let mut bins: BTreeMap<u64, Vec<Option<Sample>>> = BTreeMap::new();
    for p in positions.iter().filter(|p| p.t >= lo && p.t <= hi) {
        let i = roster
            .index_of(p.participant.as_str())
            .ok_or_else(|| ModelError::UnknownParticipant(p.participant.to_string()))?;
        let bin = ((p.t - lo) / cfg.bin).floor() as u64;
        let slot = &mut bins.entry(bin).or_insert_with(|| vec![None; n])[i];
        let candidate = (p.t, p.x, p.y);
        let later = match slot {
            None => true,
            Some(cur) => {
                candidate
                    .0
                    .total_cmp(&cur.0)
                    .then(candidate.1.total_cmp(&cur.1))
                    .then(candidate.2.total_cmp(&cur.2))
                    .is_gt()
            }
        };
        if later {
            *slot = Some(candidate);
        }
    }

    let mut close_bins = vec![vec![0u64; n]; n];
    for slots in bins.values() {
        for i in 0..n {
            let Some((_, xi, yi)) = slots[i] else { continue };
            for j in (i + 1)..n {
                let Some((_, xj, yj)) = slots[j] else { continue };
                if (xi - xj).hypot(yi - yj) <= cfg.threshold {
                    close_bins[i][j] += 1;
                }
            }
        }
    }

    let ids = roster.participants();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if close_bins[i][j] > 0 {
                pairs.push((
                    ids[i].as_str(),
                    ids[j].as_str(),
                    close_bins[i][j] as f64 * cfg.bin,
                ));
            }
        }
    }
    Ok(build_sociogram(roster, false, SociogramKind::Proximity, &pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ParticipantId;

    fn at(p: &str, t: f64, x: f64, y: f64) -> PositionSample {
        PositionSample {
            participant: ParticipantId::new(p).unwrap(),
            t,
            x,
            y,
        }
    }

    fn roster() -> Roster {
        Roster::from_ids(&["p", "q"]).unwrap()
    }

    fn no_trim() -> ProximityConfig {
        ProximityConfig {
            trim: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn constant_close_distance() {
        let mut pos = Vec::new();
        for t in 0..10 {
            pos.push(at("p", t as f64, 0.0, 0.0));
            pos.push(at("q", t as f64, 0.30, 0.0));
        }
        let s = build_proximity_sociogram(&pos, &roster(), &no_trim()).unwrap();
        assert_eq!(s.weight("p", "q"), Some(10.0));
    }

    #[test]
    fn far_apart_gives_no_edge() {
        let mut pos = Vec::new();
        for t in 0..10 {
            pos.push(at("p", t as f64, 0.0, 0.0));
            pos.push(at("q", t as f64, 1.0, 0.0));
        }
        let s = build_proximity_sociogram(&pos, &roster(), &no_trim()).unwrap();
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn trimming_keeps_middle() {
        let mut pos = Vec::new();
        for t in 0..40 {
            pos.push(at("p", t as f64, 0.0, 0.0));
            pos.push(at("q", t as f64, 0.1, 0.1));
        }
        let s = build_proximity_sociogram(&pos, &roster(), &ProximityConfig::default()).unwrap();
        assert_eq!(s.weight("p", "q"), Some(10.0));
    }

    #[test]
    fn boundary_distance_counts() {
        let pos = [at("p", 0.0, 0.0, 0.0), at("q", 0.0, 0.4572, 0.0)];
        let s = build_proximity_sociogram(&pos, &roster(), &no_trim()).unwrap();
        assert_eq!(s.weight("p", "q"), Some(1.0));
    }

    #[test]
    fn last_sample_in_bin_wins() {
        // Oversampled at 2 Hz: the later sample in each bin is far away.
        let pos = [
            at("p", 0.0, 0.0, 0.0),
            at("q", 0.0, 0.1, 0.0),
            at("p", 0.5, 0.0, 0.0),
            at("q", 0.5, 2.0, 0.0),
        ];
        let s = build_proximity_sociogram(&pos, &roster(), &no_trim()).unwrap();
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn empty_stream() {
        let s = build_proximity_sociogram(&[], &roster(), &ProximityConfig::default()).unwrap();
        assert_eq!(s.edge_count(), 0);
    }
}
