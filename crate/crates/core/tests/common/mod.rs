#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gridgather::gen::{sample, sample_structured};
use gridgather::oracle::{brute_force_weber, optimal_cost};
use gridgather::sim::{new_simulation, Caps, SchedulerKind, SchedulerPolicy};
use gridgather::symmetry::config_symmetry;
use gridgather::{
    classify, decide, manhattan_distance, scenario, select_target, Configuration, Isometry, Node, Snapshot,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Every fixture of a directory, sorted by file name.
pub fn fixtures(name: &str) -> Vec<(String, Configuration)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir(name))
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable fixture");
            let stem = p.file_stem().expect("file name").to_string_lossy().into_owned();
            (stem, scenario::parse(&text).expect("valid fixture"))
        })
        .collect()
}

/// A seeded initial configuration, symmetric more often than not.
pub fn initial(seed: u64, extent: i64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(7..=15);
        let m = rng.gen_range(1..=8);
        let c = if rng.gen_bool(0.6) {
            sample_structured(&mut rng, n, m, extent)
        } else {
            sample(&mut rng, n, m, extent)
        };
        if let Ok(c) = c {
            if c.validate_initial().is_ok() {
                return c;
            }
        }
    }
}

/// A seeded configuration with stacked robots, as met mid-execution.
pub fn stacked(seed: u64, extent: i64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| Node::new(rng.gen_range(0..=extent), rng.gen_range(0..=extent));
    let meetings: BTreeSet<Node> = (0..rng.gen_range(1..=6)).map(|_| pick(&mut rng)).collect();
    let mut robots: BTreeMap<Node, u32> = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=8) {
        let at = pick(&mut rng);
        *robots.entry(at).or_default() += rng.gen_range(1..=4);
    }
    Configuration::from_counts(meetings, robots).expect("non-empty sets")
}

/// One geodesic-step trial: some robots on a node step
/// toward a Weber node `m`. Then `m` stays a Weber node, no new Weber node
/// appears, and the minimum consistency drops by the number of movers.
pub fn geodesic_step_trial(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = if rng.gen_bool(0.5) {
        initial(rng.gen(), 20)
    } else {
        stacked(rng.gen(), 12)
    };
    let before = brute_force_weber(&c);
    let m = *before.iter().nth(rng.gen_range(0..before.len())).expect("non-empty");
    let away: Vec<(Node, u32)> = c
        .robots()
        .iter()
        .filter(|(&v, _)| v != m)
        .map(|(&v, &k)| (v, k))
        .collect();
    if away.is_empty() {
        return Ok(());
    }
    let (r, count) = away[rng.gen_range(0..away.len())];
    let k = rng.gen_range(1..=count);
    let closer: Vec<Node> = r
        .neighbours()
        .into_iter()
        .filter(|&n| manhattan_distance(n, m) < manhattan_distance(r, m))
        .collect();
    let step = closer[rng.gen_range(0..closer.len())];
    let next = c.with_move(r, step, k).map_err(|e| e.to_string())?;
    let after = brute_force_weber(&next);
    let show = || format!("{k} robot(s) {r} to {step}, m = {m}\n{}", scenario::render(&c));
    if !after.contains(&m) {
        return Err(format!("m left the Weber set: {}", show()));
    }
    if !after.is_subset(&before) {
        return Err(format!("new Weber node appeared: {}", show()));
    }
    if optimal_cost(&c) - optimal_cost(&next) != u64::from(k) {
        return Err(format!("consistency did not drop by {k}: {}", show()));
    }
    Ok(())
}

/// A configuration reached a random number of scheduler steps into a run.
pub fn snapshot(seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = initial(rng.gen(), 12);
    let kind = [SchedulerKind::Fsync, SchedulerKind::Ssync, SchedulerKind::Async][rng.gen_range(0..3)];
    let caps = Caps {
        assertions: false,
        ..Caps::default()
    };
    let mut sim = new_simulation(c, SchedulerPolicy::new(kind, rng.gen()), caps).expect("valid start");
    for _ in 0..rng.gen_range(0..60) {
        if sim.step().is_err() || sim.outcome().is_some() {
            break;
        }
    }
    sim.configuration().clone()
}

/// Checks that classification, Weber nodes, target and every robot's
/// action commute with each of the eight isometries (plus a random
/// translation). Target and actions are only compared on asymmetric
/// snapshots. Returns whether the snapshot was asymmetric.
pub fn equivariance_trial(seed: u64) -> Result<bool, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = snapshot(rng.gen());
    let asymmetric = config_symmetry(&c).is_asymmetric();
    for lin in Isometry::linear_parts() {
        let g = Isometry {
            dx: rng.gen_range(-100..=100),
            dy: rng.gen_range(-100..=100),
            ..lin
        };
        let d = c.transformed(&g);
        let fail = |what: &str| Err(format!("{what} under {g:?}\n{}", scenario::render(&c)));
        if classify(&c) != classify(&d) {
            return fail("class");
        }
        let w: BTreeSet<Node> = c.weber_nodes().into_iter().map(|n| g.apply(n)).collect();
        if w != d.weber_nodes().into_iter().collect() {
            return fail("weber nodes");
        }
        if !asymmetric {
            continue;
        }
        match (select_target(&c), select_target(&d)) {
            (Ok(t), Ok(u)) if g.apply(t) == u => {}
            (Err(_), Err(_)) => {}
            _ => return fail("target"),
        }
        for p in c.robot_positions() {
            let a = decide(&Snapshot::new(c.clone(), p).expect("occupied"));
            let b = decide(&Snapshot::new(d.clone(), g.apply(p)).expect("occupied"));
            let same = match (a, b) {
                (Ok(gridgather::Action::Stay), Ok(gridgather::Action::Stay)) => true,
                (Ok(gridgather::Action::Move(x)), Ok(gridgather::Action::Move(y))) => g.apply(x) == y,
                (Err(_), Err(_)) => true,
                _ => false,
            };
            if !same {
                return fail(&format!("action at {p}"));
            }
        }
    }
    Ok(asymmetric)
}
