mod common;

use gridgather::oracle::{explore_schedules, optimal_cost, ExploreBounds, ExploreOutcome};
use gridgather::{Configuration, Error, Node};

#[test]
fn gathered_start_has_one_outcome() {
    let c =
        Configuration::from_counts([Node::new(0, 0), Node::new(3, 1)].into(), [(Node::new(3, 1), 7)].into()).unwrap();
    let r = explore_schedules(&c, ExploreBounds::default()).unwrap();
    let only = ExploreOutcome::Gathered {
        node: Node::new(3, 1),
        total_moves: 0,
    };
    assert_eq!(r.outcomes.into_iter().collect::<Vec<_>>(), vec![only]);
}

#[test]
fn ungatherable_start_has_one_outcome() {
    let (_, c) = &common::fixtures("u")[0];
    let r = explore_schedules(c, ExploreBounds::default()).unwrap();
    assert_eq!(r.outcomes.len(), 1);
    assert!(matches!(r.outcomes.first(), Some(ExploreOutcome::Ungatherable(_))));
}

#[test]
fn micro_i1_has_one_optimal_outcome() {
    let (_, c) = common::fixtures("micro")
        .into_iter()
        .find(|(s, _)| s == "I1_1")
        .unwrap();
    let r = explore_schedules(&c, ExploreBounds::default()).unwrap();
    assert_eq!(r.outcomes.len(), 1);
    assert_eq!(r.min_moves, Some(optimal_cost(&c)));
    assert_eq!(r.max_moves, Some(optimal_cost(&c)));
}

#[test]
fn state_budget_is_enforced() {
    let (_, c) = &common::fixtures("micro")[0];
    let tight = ExploreBounds {
        max_depth: 10_000,
        max_states: 50,
    };
    assert!(matches!(
        explore_schedules(c, tight),
        Err(Error::ResourceExhausted { .. })
    ));
}

#[test]
fn depth_bound_cuts_schedules() {
    let (_, c) = &common::fixtures("micro")[0];
    let shallow = ExploreBounds {
        max_depth: 3,
        max_states: 2_000_000,
    };
    let r = explore_schedules(c, shallow).unwrap();
    assert_eq!(
        r.outcomes.into_iter().collect::<Vec<_>>(),
        vec![ExploreOutcome::DepthCapped]
    );
}
