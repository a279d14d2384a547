mod common;

use std::collections::{BTreeMap, BTreeSet};

use gridgather::oracle::{
    brute_corner_string, brute_force_weber, brute_mer, brute_symmetry_kind, optimal_cost, weak_vs_strong_divergence,
};
use gridgather::rect::corner_string;
use gridgather::symmetry::config_symmetry;
use gridgather::{compute_mer, Configuration, Isometry, Lines, Node};
use proptest::prelude::*;

fn config(meeting: &[(i64, i64)], robots: &[((i64, i64), u32)]) -> Configuration {
    Configuration::from_counts(
        meeting.iter().map(|&(x, y)| Node::new(x, y)).collect(),
        robots.iter().map(|&((x, y), c)| (Node::new(x, y), c)).collect(),
    )
    .unwrap()
}

fn agrees(c: &Configuration) -> Result<(), TestCaseError> {
    let weber: BTreeSet<Node> = c.weber_nodes().into_iter().collect();
    prop_assert_eq!(&weber, &brute_force_weber(c));
    prop_assert_eq!(c.min_consistency(), optimal_cost(c));
    let mer = compute_mer(c);
    prop_assert_eq!((mer.min, mer.max), brute_mer(c));
    prop_assert_eq!(config_symmetry(c).kind, brute_symmetry_kind(c));
    for corner in mer.corners() {
        for lines in [Lines::Vertical, Lines::Horizontal] {
            let s = corner_string(c, corner.node, lines).unwrap();
            prop_assert_eq!(s.full, brute_corner_string(c, corner.node, lines));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn agreement_on_initial_configurations(seed in any::<u64>()) {
        agrees(&common::initial(seed, 20))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn agreement_with_multiplicities(seed in any::<u64>()) {
        agrees(&common::stacked(seed, 12))?;
    }

    #[test]
    fn cost_is_translation_invariant(seed in any::<u64>(), dx in -50i64..50, dy in -50i64..50) {
        let c = common::initial(seed, 20);
        let moved = c.transformed(&Isometry::new(0, false, dx, dy));
        prop_assert_eq!(optimal_cost(&c), optimal_cost(&moved));
    }

    #[test]
    fn unstacked_robots_never_diverge(seed in any::<u64>()) {
        let c = common::stacked(seed, 12);
        let distinct = c.robots().values().all(|&k| k == 1);
        if distinct {
            prop_assert!(!weak_vs_strong_divergence(&c));
        }
    }
}

#[test]
fn singleton_meeting_set() {
    let c = config(&[(3, 3)], &[((0, 0), 1), ((5, 1), 1)]);
    assert_eq!(brute_force_weber(&c), BTreeSet::from([Node::new(3, 3)]));
}

#[test]
fn all_robots_on_one_meeting_node() {
    let c = config(&[(0, 0), (4, 4)], &[((4, 4), 7)]);
    assert_eq!(brute_force_weber(&c), BTreeSet::from([Node::new(4, 4)]));
    assert_eq!(optimal_cost(&c), 0);
}

#[test]
fn cost_by_direct_summation() {
    let c = config(&[(1, 0), (3, 0)], &[((0, 0), 1), ((4, 0), 1), ((2, 1), 1)]);
    assert_eq!(optimal_cost(&c), 6);
}

#[test]
fn weak_view_loses_the_weber_node() {
    let c = config(&[(0, 0), (10, 0)], &[((1, 0), 5), ((9, 0), 1)]);
    assert_eq!(brute_force_weber(&c), BTreeSet::from([Node::new(0, 0)]));
    assert!(weak_vs_strong_divergence(&c));
}

#[test]
fn distinct_robots_see_the_same_set_either_way() {
    let robots: BTreeMap<Node, u32> = (0..7).map(|i| (Node::new(i, 2 * i % 5), 1)).collect();
    let c = Configuration::from_counts(BTreeSet::from([Node::new(0, 0), Node::new(6, 1)]), robots).unwrap();
    assert!(!weak_vs_strong_divergence(&c));
}
