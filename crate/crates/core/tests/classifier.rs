mod common;

use gridgather::classify::is_gatherable;
use gridgather::symmetry::{config_symmetry, meeting_symmetry};
use gridgather::{classify, Configuration, Major, Minor, Node};

fn label_of(stem: &str) -> &str {
    stem.split('_').next().unwrap()
}

#[test]
fn micro_fixtures_carry_their_class() {
    let all = common::fixtures("micro");
    assert_eq!(all.len(), 25);
    for (stem, c) in all {
        let l = classify(&c);
        assert_eq!(l.to_string(), label_of(&stem), "{stem}");
        assert!(l.gatherable && !l.in_u_prime, "{stem}");
    }
}

#[test]
fn u_fixtures_are_ungatherable() {
    let all = common::fixtures("u");
    assert!(all.len() >= 20);
    let (mut single_axis, mut rotation) = (0, 0);
    for (stem, c) in all {
        let l = classify(&c);
        assert!(!l.gatherable && !l.in_u_prime, "{stem}: {l}");
        assert!(
            matches!((l.major, l.minor), (Major::I3, Minor::B4) | (Major::I4, Minor::B3)),
            "{stem}: {l}"
        );
        let s = config_symmetry(&c);
        if s.axes.len() == 1 && s.rotation.is_none() {
            single_axis += 1;
        }
        if s.rotation.is_some() {
            rotation += 1;
        }
        let (ok, reason) = is_gatherable(&c);
        assert!(!ok && reason.is_some(), "{stem}");
    }
    assert!(single_axis > 0 && rotation > 0, "both shapes are needed");
}

#[test]
fn u_prime_fixtures_are_flagged() {
    let all = common::fixtures("u_prime");
    assert!(all.len() >= 5);
    for (stem, c) in all {
        let l = classify(&c);
        assert_eq!(l.to_string(), "I3b3", "{stem}");
        assert!(!l.gatherable && l.in_u_prime, "{stem}");
        let axis = config_symmetry(&c).axes[0];
        assert!(c.meeting_nodes().iter().any(|&m| axis.contains(m)), "{stem}");
        assert!(!c.weber_nodes().iter().any(|&w| axis.contains(w)), "{stem}");
    }
}

#[test]
fn singleton_meeting_set_is_always_i1() {
    for seed in 0..50 {
        let c = common::initial(seed, 15);
        let one = Configuration::from_counts([Node::new(7, 7)].into(), c.robots().clone()).unwrap();
        let l = classify(&one);
        assert_eq!(l.to_string(), "I1");
        assert!(l.gatherable);
    }
}

#[test]
fn single_weber_node_or_asymmetric_meeting_set() {
    for seed in 0..300 {
        let c = common::initial(seed, 15);
        let l = classify(&c);
        if c.weber_nodes().len() == 1 {
            assert_eq!(l.major, Major::I1, "seed {seed}");
        } else if meeting_symmetry(c.meeting_nodes()).is_asymmetric() {
            assert_eq!(l.major, Major::I2, "seed {seed}");
        } else {
            assert!(matches!(l.major, Major::I3 | Major::I4), "seed {seed}");
        }
    }
}
