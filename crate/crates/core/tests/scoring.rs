use std::collections::BTreeMap;

use proptest::prelude::*;
use serde::Deserialize;
use sociokit::characterize::{
    category_of, category_scores, characterize, score, sweep_configurations,
    verify_category_partition, CharacteristicProfile, Centralization, Clustering, Cohesion,
    Connectivity, GroupCategory, Influence, ProfileSet, SociogramWeights, ThresholdConfig,
    TieOrder, WeightConfig,
};
use sociokit::metrics::{MetricValues, MetricsReport};
use sociokit::model::SociogramKind;

#[derive(Deserialize)]
struct Fixture {
    groups: Vec<Group>,
}

#[derive(Deserialize)]
struct Group {
    group: String,
    conversation: CharacteristicProfile,
    proximity: CharacteristicProfile,
    attention: CharacteristicProfile,
}

fn reference_groups() -> Vec<(String, ProfileSet)> {
    let text = include_str!("fixtures/reference_profiles.json");
    let fixture: Fixture = serde_json::from_str(text).unwrap();
    fixture
        .groups
        .into_iter()
        .map(|g| {
            let set = BTreeMap::from([
                (SociogramKind::Conversation, g.conversation),
                (SociogramKind::Proximity, g.proximity),
                (SociogramKind::Attention, g.attention),
            ]);
            (g.group, set)
        })
        .collect()
}

/// Category votes counted by hand: each value adds one unit to its category.
fn unit_counts(set: &ProfileSet) -> [usize; 3] {
    let mut c = [0; 3];
    for p in set.values() {
        for v in p.values() {
            match category_of(v).unwrap() {
                GroupCategory::Cohesive => c[0] += 1,
                GroupCategory::Fragmented => c[1] += 1,
                GroupCategory::Competitive => c[2] += 1,
            }
        }
    }
    c
}

#[test]
fn reference_groups_receive_expected_labels() {
    let expected_cohesive = ["3", "4", "9", "11"];
    for (group, set) in reference_groups() {
        let card = score(&set, &WeightConfig::equal(), &TieOrder::default()).unwrap();
        let want = if expected_cohesive.contains(&group.as_str()) {
            GroupCategory::Cohesive
        } else {
            GroupCategory::Fragmented
        };
        assert_eq!(card.label, want, "group {group}");
    }
}

#[test]
fn hand_counted_group_scores() {
    let groups: BTreeMap<String, ProfileSet> = reference_groups().into_iter().collect();
    assert_eq!(unit_counts(&groups["9"]), [9, 1, 5]);
    assert_eq!(unit_counts(&groups["2"]), [4, 6, 5]);
    assert_eq!(unit_counts(&groups["1"]), [6, 6, 3]);
    let g1 = score(&groups["1"], &WeightConfig::equal(), &TieOrder::default()).unwrap();
    assert!(g1.tie_break_applied);
    assert_eq!(g1.label, GroupCategory::Fragmented);
    let reversed = TieOrder::new([
        GroupCategory::Cohesive,
        GroupCategory::Fragmented,
        GroupCategory::Competitive,
    ])
    .unwrap();
    assert_eq!(
        score(&groups["1"], &WeightConfig::equal(), &reversed).unwrap().label,
        GroupCategory::Cohesive
    );
}

#[test]
fn group2_across_presets() {
    let groups: BTreeMap<String, ProfileSet> = reference_groups().into_iter().collect();
    let cards =
        sweep_configurations(&groups["2"], &WeightConfig::all_presets(), &TieOrder::default())
            .unwrap();
    assert_eq!(cards.len(), 7);
    // cohesive/fragmented/competitive units per sociogram
    let per_kind = [[1.0, 3.0, 1.0], [3.0, 0.0, 2.0], [0.0, 3.0, 2.0]];
    for card in &cards {
        let w = card.config.weights();
        let ws = [w.conversation, w.proximity, w.attention];
        let want: Vec<f64> = (0..3)
            .map(|c| (0..3).map(|k| ws[k] * per_kind[k][c]).sum())
            .collect();
        assert!((card.score_cohesive - want[0]).abs() < 1e-12);
        assert!((card.score_fragmented - want[1]).abs() < 1e-12);
        assert!((card.score_competitive - want[2]).abs() < 1e-12);
    }
    assert!(sweep_configurations(&groups["2"], &[], &TieOrder::default())
        .unwrap()
        .is_empty());
}

#[test]
fn vocabulary_partition_holds() {
    verify_category_partition().unwrap();
}

#[test]
fn misspelled_values_are_rejected() {
    let err = serde_json::from_str::<CharacteristicProfile>(
        r#"{"cohesion":"high","influence":"high","connectivity":"moderate","centralization":"distributed","clustering":"tightknit"}"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("tightknit"));
}

fn arb_profile() -> impl Strategy<Value = CharacteristicProfile> {
    (0..3usize, 0..3usize, 0..3usize, 0..2usize, 0..2usize).prop_map(|(a, b, c, d, e)| {
        CharacteristicProfile::new(
            Cohesion::ALL[a],
            Influence::ALL[b],
            Connectivity::ALL[c],
            Centralization::ALL[d],
            Clustering::ALL[e],
        )
    })
}

fn arb_profiles() -> impl Strategy<Value = ProfileSet> {
    (arb_profile(), arb_profile(), arb_profile()).prop_map(|(c, p, a)| {
        BTreeMap::from([
            (SociogramKind::Conversation, c),
            (SociogramKind::Proximity, p),
            (SociogramKind::Attention, a),
        ])
    })
}

fn arb_weights() -> impl Strategy<Value = SociogramWeights> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("non-zero", |(a, b, c)| a + b + c > 1e-3)
        .prop_map(|(a, b, c)| {
            let t = a + b + c;
            SociogramWeights {
                conversation: a / t,
                proximity: b / t,
                attention: c / t,
            }
        })
}

fn scaled(w: &SociogramWeights, c: f64) -> SociogramWeights {
    SociogramWeights {
        conversation: w.conversation * c,
        proximity: w.proximity * c,
        attention: w.attention * c,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn scores_sum_to_five(profiles in arb_profiles(), w in arb_weights()) {
        let s = category_scores(&profiles, &w).unwrap();
        prop_assert!((s.cohesive + s.fragmented + s.competitive - 5.0 * w.total()).abs() < 1e-12);
    }

    #[test]
    fn label_is_scale_invariant(profiles in arb_profiles(), w in arb_weights(), c in 0.01f64..100.0) {
        let order = TieOrder::default();
        let a = category_scores(&profiles, &w).unwrap().label(&order, w.total());
        let sw = scaled(&w, c);
        let b = category_scores(&profiles, &sw).unwrap().label(&order, sw.total());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn raising_a_sociogram_helps_its_plurality_category(
        profiles in arb_profiles(),
        w in arb_weights(),
        kind_idx in 0..3usize,
        which in 0..3usize,
        extra in 0.0f64..2.0,
    ) {
        // No profile can send all five values to one category, so the
        // overwritten sociogram carries four votes for `target`.
        let kind = SociogramKind::ALL[kind_idx];
        let (profile, target) = match which {
            0 => (CharacteristicProfile::disconnected(), GroupCategory::Fragmented),
            1 => (
                CharacteristicProfile::new(Cohesion::Moderate, Influence::Moderate,
                    Connectivity::Resilient, Centralization::Centralized, Clustering::TightKnit),
                GroupCategory::Competitive,
            ),
            _ => (
                CharacteristicProfile::new(Cohesion::High, Influence::High,
                    Connectivity::Moderate, Centralization::Distributed, Clustering::TightKnit),
                GroupCategory::Cohesive,
            ),
        };
        let mut profiles = profiles;
        profiles.insert(kind, CharacteristicProfile { disconnected: false, ..profile });
        let mut heavier = w;
        match kind {
            SociogramKind::Conversation => heavier.conversation += extra,
            SociogramKind::Proximity => heavier.proximity += extra,
            SociogramKind::Attention => heavier.attention += extra,
        }
        let before = category_scores(&profiles, &w).unwrap();
        let after = category_scores(&profiles, &heavier).unwrap();
        prop_assert!(after.get(target) >= before.get(target));
        let order = TieOrder::default();
        let top = GroupCategory::ALL.iter().all(|&c| c == target || before.get(target) > before.get(c));
        let votes = |c| profiles[&kind].values().iter().filter(|v| category_of(v) == Some(c)).count();
        let plurality = GroupCategory::ALL.iter().all(|&c| votes(target) >= votes(c));
        prop_assert!(plurality);
        if top {
            prop_assert_eq!(after.label(&order, heavier.total()).0, target);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn report(sc: f64, sx: f64, mx: f64, sp: f64, mk: f64, kappa: u32, spl: f64, sg: f64) -> MetricsReport {
    MetricsReport {
        connected: true,
        values: Some(MetricValues {
            eigenvector: vec![],
            mean_eigenvector: mx,
            eigenvector_variability: sx,
            clustering: vec![],
            clustering_variability: sc,
            pagerank: vec![],
            pagerank_variability: sp,
            betweenness: vec![],
            betweenness_variability: sg,
            mean_katz: mk,
            path_length_variability: spl,
            edge_connectivity: kappa,
        }),
    }
}

#[test]
fn threshold_flips_touch_only_referencing_dimensions() {
    let cfg = ThresholdConfig::default();
    let base = report(0.03, 0.05, 0.50, 0.01, 0.48, 3, 10.0, 0.10);
    let p0 = characterize(&base, &cfg);
    assert_eq!(
        p0.values(),
        ["high", "high", "resilient", "distributed", "tight-knit"]
    );
    let flip = |f: &dyn Fn(&mut MetricValues)| {
        let mut r = base.clone();
        f(r.values.as_mut().unwrap());
        characterize(&r, &cfg)
    };
    let changed = |p: CharacteristicProfile| -> Vec<usize> {
        (0..5).filter(|&i| p.values()[i] != p0.values()[i]).collect()
    };
    assert_eq!(changed(flip(&|m| m.betweenness_variability = 0.40)), [3]);
    assert_eq!(changed(flip(&|m| m.clustering_variability = 0.06)), [0, 4]);
    assert_eq!(changed(flip(&|m| m.eigenvector_variability = 0.09)), [0]);
    assert_eq!(changed(flip(&|m| m.mean_katz = 0.46)), [1]);
    assert_eq!(changed(flip(&|m| m.edge_connectivity = 2)), [2]);
    assert_eq!(changed(flip(&|m| m.path_length_variability = 30.0)), [2]);
}
