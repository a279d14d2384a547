//! Seeded random scenarios.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, ClassLabel};
use crate::config::{Configuration, MIN_ROBOTS};
use crate::error::{Error, Result};
use crate::node::Node;

/// Parameters of [`generate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub robots: u32,
    pub meetings: u32,
    /// Coordinates are drawn from `0..=extent`.
    pub extent: i64,
    pub seed: u64,
    pub class: Option<ClassLabel>,
    pub attempts: u32,
}

impl GenSpec {
    pub fn new(robots: u32, meetings: u32, extent: i64, seed: u64) -> Self {
        GenSpec {
            robots,
            meetings,
            extent,
            seed,
            class: None,
            attempts: 100_000,
        }
    }
}

/// One random configuration: distinct robot positions, distinct meeting
/// nodes, both drawn uniformly from the square.
pub fn sample(rng: &mut impl Rng, robots: u32, meetings: u32, extent: i64) -> Result<Configuration> {
    let side = extent + 1;
    let cells = (side * side) as usize;
    if robots as usize > cells || meetings as usize > cells || meetings == 0 {
        return Err(Error::Domain(format!(
            "cannot place {robots} robots and {meetings} meeting nodes in a {side}x{side} square"
        )));
    }
    let all: Vec<Node> = (0..side)
        .flat_map(|x| (0..side).map(move |y| Node::new(x, y)))
        .collect();
    let m: BTreeSet<Node> = all.choose_multiple(rng, meetings as usize).copied().collect();
    let r: Vec<Node> = all.choose_multiple(rng, robots as usize).copied().collect();
    Configuration::new(m, r)
}

type Op = fn(i64, i64) -> (i64, i64);

/// Linear isometries about a doubled center, as maps on doubled offsets.
const OPS: [Op; 8] = [
    |x, y| (x, y),
    |x, y| (-x, y),
    |x, y| (x, -y),
    |x, y| (y, x),
    |x, y| (-y, -x),
    |x, y| (-x, -y),
    |x, y| (-y, x),
    |x, y| (y, -x),
];

/// Symmetry groups of the square lattice as index sets into [`OPS`].
const GROUPS: [&[usize]; 9] = [
    &[0],
    &[0, 1],
    &[0, 2],
    &[0, 3],
    &[0, 4],
    &[0, 5],
    &[0, 1, 2, 5],
    &[0, 3, 4, 5],
    &[0, 5, 6, 7],
];

fn orbit(group: &[usize], c2: (i64, i64), p: Node) -> Vec<Node> {
    let (x, y) = (2 * p.x - c2.0, 2 * p.y - c2.1);
    let mut out: Vec<Node> = group
        .iter()
        .map(|&g| {
            let (a, b) = OPS[g](x, y);
            Node::new((a + c2.0).div_euclid(2), (b + c2.1).div_euclid(2))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A configuration whose meeting nodes are symmetric under a random group
/// and whose robots are symmetric under that group, one of its order-two
/// elements, or nothing, possibly with a nudged robot. Reaches the
/// symmetric classes that uniform sampling almost never hits.
pub fn sample_structured(rng: &mut impl Rng, robots: u32, meetings: u32, extent: i64) -> Result<Configuration> {
    let group = GROUPS[rng.gen_range(1..GROUPS.len())];
    // Same parity on both axes keeps diagonal images on the lattice.
    let par = rng.gen_range(0..2);
    let lo = extent / 2 - 2;
    let c2 = (
        2 * rng.gen_range(lo..=lo + 4) + par,
        2 * rng.gen_range(lo..=lo + 4) + par,
    );
    let inside = |n: &Node| (0..=extent).contains(&n.x) && (0..=extent).contains(&n.y);
    let point = |rng: &mut dyn rand::RngCore| Node::new(rng.gen_range(0..=extent), rng.gen_range(0..=extent));
    let mut m: BTreeSet<Node> = BTreeSet::new();
    for _ in 0..64 {
        if m.len() >= meetings as usize {
            break;
        }
        let o = orbit(group, c2, point(rng));
        if o.iter().all(inside) && m.len() + o.len() <= meetings.max(1) as usize + 1 {
            m.extend(o);
        }
    }
    if m.is_empty() {
        m.extend(orbit(group, c2, Node::new(c2.0.div_euclid(2), c2.1.div_euclid(2))));
    }
    let sub: Vec<usize> = match rng.gen_range(0..3) {
        0 => group.to_vec(),
        1 => vec![0, *group[1..].choose(rng).expect("non-trivial group")],
        _ => vec![0],
    };
    let mut r: BTreeSet<Node> = BTreeSet::new();
    for _ in 0..256 {
        if r.len() >= robots as usize {
            break;
        }
        let o = orbit(&sub, c2, point(rng));
        if o.iter().all(inside) && r.len() + o.len() <= robots as usize + 1 {
            r.extend(o);
        }
    }
    let mut r: Vec<Node> = r.into_iter().collect();
    if rng.gen_bool(0.3) && !r.is_empty() {
        let i = rng.gen_range(0..r.len());
        let moved = *r[i].neighbours().choose(rng).expect("four neighbours");
        if inside(&moved) && !r.contains(&moved) {
            r[i] = moved;
        }
    }
    Configuration::new(m, r)
}

/// Rejection-samples a configuration, optionally of a given class.
pub fn generate(spec: &GenSpec) -> Result<Configuration> {
    if spec.robots < MIN_ROBOTS {
        return Err(Error::InvalidConfig(format!(
            "at least {MIN_ROBOTS} robots are required, got {}",
            spec.robots
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for attempt in 0..spec.attempts.max(1) {
        let c = if spec.class.is_some() && attempt % 2 == 1 {
            sample_structured(&mut rng, spec.robots, spec.meetings, spec.extent)?
        } else {
            sample(&mut rng, spec.robots, spec.meetings, spec.extent)?
        };
        if c.robot_count() != spec.robots || c.meeting_nodes().len() != spec.meetings as usize {
            continue;
        }
        if spec.class.is_none_or(|want| classify(&c) == want) {
            return Ok(c);
        }
    }
    Err(Error::Domain(format!(
        "no configuration of class {} found in {} attempts",
        spec.class.map_or("any".to_string(), |c| c.to_string()),
        spec.attempts
    )))
}
