//! Direct scoring of hand-written characteristic profiles.
//!
//! ```json
//! {"groups": [
//!   {"group": "9",
//!    "conversation": {"cohesion": "high", "influence": "moderate", "connectivity": "moderate",
//!                     "centralization": "distributed", "clustering": "tight-knit"},
//!    "proximity": {...},
//!    "attention": {...}}
//! ]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use sociokit::characterize::{sweep_configurations, CharacteristicProfile, GroupScorecard, ProfileSet};
use sociokit::model::SociogramKind;

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupProfiles {
    pub group: String,
    pub conversation: CharacteristicProfile,
    pub proximity: CharacteristicProfile,
    pub attention: CharacteristicProfile,
}

impl GroupProfiles {
    pub fn profile_set(&self) -> ProfileSet {
        BTreeMap::from([
            (SociogramKind::Conversation, self.conversation),
            (SociogramKind::Proximity, self.proximity),
            (SociogramKind::Attention, self.attention),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfilesFile {
    pub groups: Vec<GroupProfiles>,
}

impl ProfilesFile {
    /// Parses a profiles document. Vocabulary errors quote the offending value.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Profiles(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResult {
    pub group: String,
    pub scorecards: Vec<GroupScorecard>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreOutput {
    pub groups: Vec<GroupResult>,
}

impl ScoreOutput {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scorecards serialize");
        s.push('\n');
        s
    }
}

pub fn score_groups(input: &ProfilesFile, cfg: &RunConfig) -> Result<ScoreOutput, CliError> {
    let presets = cfg.weight_configs();
    let groups = input
        .groups
        .iter()
        .map(|g| {
            Ok(GroupResult {
                group: g.group.clone(),
                scorecards: sweep_configurations(&g.profile_set(), &presets, &cfg.tie_order)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ScoreOutput { groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sociokit::GroupCategory;

    const COHESIVE: &str = r#"{"cohesion": "high", "influence": "high", "connectivity": "moderate",
        "centralization": "distributed", "clustering": "tight-knit"}"#;

    #[test]
    fn misspelled_value_names_token() {
        let text = format!(
            r#"{{"groups": [{{"group": "x", "conversation": {COHESIVE}, "proximity": {COHESIVE},
               "attention": {}}}]}}"#,
            COHESIVE.replace("tight-knit", "tightknit")
        );
        let err = ProfilesFile::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("tightknit"), "{err}");
    }

    #[test]
    fn unanimous_group() {
        let text = format!(
            r#"{{"groups": [{{"group": "x", "conversation": {COHESIVE}, "proximity": {COHESIVE},
               "attention": {COHESIVE}}}]}}"#
        );
        let input = ProfilesFile::from_json(&text).unwrap();
        let out = score_groups(&input, &RunConfig::default()).unwrap();
        assert_eq!(out.groups[0].scorecards.len(), 7);
        for card in &out.groups[0].scorecards {
            assert_eq!(card.label, GroupCategory::Cohesive);
            assert!((card.score_cohesive - 4.0).abs() < 1e-12);
            assert!((card.score_competitive - 1.0).abs() < 1e-12);
        }
    }
}
