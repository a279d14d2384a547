mod common;

use gridgather::oracle::{brute_force_weber, optimal_cost};
use gridgather::sim::{new_simulation, run, Caps, Outcome, SchedulerKind, SchedulerPolicy};
use gridgather::trace::EventKind;
use gridgather::{Configuration, Error, Node};

const KINDS: [SchedulerKind; 3] = [SchedulerKind::Fsync, SchedulerKind::Ssync, SchedulerKind::Async];

fn gathers_optimally(c: &Configuration, policy: SchedulerPolicy) {
    let (outcome, trace) = run(c, policy, Caps::default()).unwrap();
    match outcome {
        Outcome::Gathered { node, total_moves, .. } => {
            assert!(brute_force_weber(c).contains(&node), "{policy:?}");
            assert_eq!(total_moves, optimal_cost(c), "{policy:?}");
            let moves = trace.events.iter().filter(|e| e.kind == EventKind::Move).count() as u64;
            assert_eq!(moves, total_moves);
        }
        o => panic!("{policy:?}: {o:?}"),
    }
}

#[test]
fn micro_fixtures_gather_optimally_under_every_scheduler() {
    for (stem, c) in common::fixtures("micro") {
        for kind in KINDS {
            for seed in 0..3 {
                let policy = SchedulerPolicy::new(kind, seed);
                std::panic::catch_unwind(|| gathers_optimally(&c, policy)).unwrap_or_else(|_| panic!("{stem}"));
            }
        }
    }
}

#[test]
fn random_starts_gather_optimally() {
    for seed in 0..60 {
        let c = common::initial(seed, 14);
        if !gridgather::classify(&c).gatherable {
            continue;
        }
        for kind in KINDS {
            gathers_optimally(&c, SchedulerPolicy::new(kind, seed));
        }
    }
}

#[test]
fn same_seed_same_trace() {
    for seed in 0..10 {
        let c = common::initial(seed, 12);
        for kind in KINDS {
            let policy = SchedulerPolicy::new(kind, seed ^ 0x5eed);
            let a = run(&c, policy, Caps::default()).unwrap().1.render();
            let b = run(&c, policy, Caps::default()).unwrap().1.render();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn ungatherable_starts_never_move() {
    for dir in ["u", "u_prime"] {
        for (stem, c) in common::fixtures(dir) {
            for kind in KINDS {
                let (outcome, trace) = run(&c, SchedulerPolicy::new(kind, 1), Caps::default()).unwrap();
                assert!(matches!(outcome, Outcome::Ungatherable(_)), "{stem}");
                assert!(trace.events.iter().all(|e| e.kind != EventKind::Move), "{stem}");
            }
        }
    }
}

#[test]
fn step_cap_is_reported() {
    let (_, c) = &common::fixtures("micro")[0];
    let caps = Caps {
        max_steps: 2,
        assertions: true,
    };
    let (outcome, _) = run(c, SchedulerPolicy::new(SchedulerKind::Fsync, 0), caps).unwrap();
    assert!(matches!(outcome, Outcome::CapExceeded { steps: 2, .. }), "{outcome:?}");
}

#[test]
fn bad_starts_are_rejected() {
    let six = Configuration::new([Node::new(0, 0)], (0..6).map(|i| Node::new(i, 1))).unwrap();
    let policy = SchedulerPolicy::new(SchedulerKind::Fsync, 0);
    assert!(matches!(
        new_simulation(six, policy, Caps::default()),
        Err(Error::InvalidConfig(_))
    ));
    let stacked = Configuration::new([Node::new(0, 0)], (0..8).map(|i| Node::new(i % 4, 1))).unwrap();
    assert!(new_simulation(stacked, policy, Caps::default()).is_err());
    let (_, c) = &common::fixtures("micro")[0];
    let lax = SchedulerPolicy { fairness: 1, ..policy };
    assert!(new_simulation(c.clone(), lax, Caps::default()).is_err());
}

#[test]
fn already_gathered_takes_no_moves() {
    let c =
        Configuration::from_counts([Node::new(2, 2), Node::new(5, 0)].into(), [(Node::new(2, 2), 9)].into()).unwrap();
    assert_eq!(optimal_cost(&c), 0);
    assert_eq!(c.gathered_at(), Some(Node::new(2, 2)));
}
