//! Exhaustive exploration of ASYNC interleavings on small instances.
//!
//! Every event is a single robot either taking a snapshot (and computing
//! its destination) or executing the move it computed earlier. Sequences
//! of such events cover every FSYNC, SSYNC and ASYNC schedule. States are
//! identified up to grid isometries and robot anonymity.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algo::{plan, Action, Plan};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::node::{Isometry, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreBounds {
    /// Events along any one schedule before it is cut off.
    pub max_depth: u64,
    /// Distinct states before giving up.
    pub max_states: usize,
}

impl Default for ExploreBounds {
    fn default() -> Self {
        ExploreBounds {
            max_depth: 10_000,
            max_states: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExploreOutcome {
    Gathered {
        node: Node,
        total_moves: u64,
    },
    Ungatherable(String),
    /// A schedule longer than the depth bound.
    DepthCapped,
    /// Nobody wants to move although the robots are not gathered.
    Stuck,
}

impl ExploreOutcome {
    fn mapped(&self, g: &Isometry) -> Self {
        match self {
            ExploreOutcome::Gathered { node, total_moves } => ExploreOutcome::Gathered {
                node: g.apply(*node),
                total_moves: *total_moves,
            },
            o => o.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreReport {
    pub outcomes: BTreeSet<ExploreOutcome>,
    pub states: usize,
    pub min_moves: Option<u64>,
    pub max_moves: Option<u64>,
}

/// Robot positions with the destination each has computed, if any.
type Robots = Vec<(Node, Option<Node>)>;
type Key = (Vec<Node>, Robots, u64);

fn canonical(meeting: &[Node], robots: &Robots, moves: u64) -> (Key, Isometry) {
    let mut best: Option<(Key, Isometry)> = None;
    for lin in Isometry::linear_parts() {
        let pts = meeting
            .iter()
            .chain(robots.iter().map(|(p, _)| p))
            .map(|&n| lin.apply(n));
        let (mx, my) = pts.fold((i64::MAX, i64::MAX), |(a, b), n| (a.min(n.x), b.min(n.y)));
        let g = Isometry {
            dx: -mx,
            dy: -my,
            ..lin
        };
        let mut m: Vec<Node> = meeting.iter().map(|&n| g.apply(n)).collect();
        m.sort();
        let mut r: Robots = robots
            .iter()
            .map(|&(p, d)| (g.apply(p), d.map(|d| g.apply(d))))
            .collect();
        r.sort();
        let key = (m, r, moves);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, g));
        }
    }
    best.expect("eight candidates")
}

fn configuration(key: &Key) -> Result<Configuration> {
    let mut counts: BTreeMap<Node, u32> = BTreeMap::new();
    for &(p, _) in &key.1 {
        *counts.entry(p).or_default() += 1;
    }
    Configuration::from_counts(key.0.iter().copied().collect(), counts)
}

struct Graph {
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    /// Successor and the map from its frame back to this state's frame.
    edges: Vec<Vec<(usize, Isometry)>>,
    terminal: Vec<Option<ExploreOutcome>>,
}

impl Graph {
    fn intern(&mut self, key: Key) -> (usize, bool) {
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.keys.len();
        self.index.insert(key.clone(), i);
        self.keys.push(key);
        self.edges.push(Vec::new());
        self.terminal.push(None);
        (i, true)
    }
}

fn fault(invariant: &'static str, step: u64, detail: String) -> Error {
    Error::InvariantViolation {
        invariant,
        step,
        detail,
    }
}

/// Every state one event away from `key`.
fn successors(key: &Key, cfg: &Configuration, p: &Plan, depth: u64) -> Result<Vec<(Robots, u64)>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, &(pos, dest)) in key.1.iter().enumerate() {
        if !seen.insert((pos, dest)) {
            continue;
        }
        let mut robots = key.1.clone();
        match dest {
            None => {
                if let Action::Move(d) = p.action(pos) {
                    robots[i] = (pos, Some(d));
                    out.push((robots, key.2));
                }
            }
            Some(d) => {
                if !pos.is_adjacent(d) {
                    return Err(fault("adjacency", depth, format!("{pos} to {d}")));
                }
                let next = cfg.with_move(pos, d, 1)?;
                if next.min_consistency() + 1 != cfg.min_consistency() {
                    return Err(fault(
                        "weber-step",
                        depth,
                        format!("{pos} to {d} in\n{}", crate::scenario::render(cfg)),
                    ));
                }
                robots[i] = (d, None);
                out.push((robots, key.2 + 1));
            }
        }
    }
    Ok(out)
}

/// All outcomes reachable from `initial` under any schedule.
pub fn explore_schedules(initial: &Configuration, bounds: ExploreBounds) -> Result<ExploreReport> {
    let meeting: Vec<Node> = initial.meeting_nodes().iter().copied().collect();
    let robots: Robots = initial
        .robots()
        .iter()
        .flat_map(|(&v, &c)| (0..c).map(move |_| (v, None)))
        .collect();
    if let Err(Error::Ungatherable(reason)) = plan(initial) {
        return Ok(ExploreReport {
            outcomes: BTreeSet::from([ExploreOutcome::Ungatherable(reason)]),
            states: 1,
            min_moves: None,
            max_moves: None,
        });
    }
    let (key0, h0) = canonical(&meeting, &robots, 0);
    let mut g = Graph {
        keys: Vec::new(),
        index: HashMap::new(),
        edges: Vec::new(),
        terminal: Vec::new(),
    };
    let (root, _) = g.intern(key0);
    let mut depth = vec![0u64];
    let mut plans: HashMap<Configuration, std::result::Result<Plan, Error>> = HashMap::new();
    let mut queue = VecDeque::from([root]);
    while let Some(id) = queue.pop_front() {
        let key = g.keys[id].clone();
        let cfg = configuration(&key)?;
        if let Some(node) = cfg.gathered_at() {
            g.terminal[id] = Some(ExploreOutcome::Gathered {
                node,
                total_moves: key.2,
            });
            continue;
        }
        if depth[id] >= bounds.max_depth {
            g.terminal[id] = Some(ExploreOutcome::DepthCapped);
            continue;
        }
        let p = plans.entry(cfg.clone()).or_insert_with(|| plan(&cfg)).clone();
        let p = p.map_err(|e| {
            fault(
                "decide",
                depth[id],
                format!("{e} in\n{}", crate::scenario::render(&cfg)),
            )
        })?;
        let next = successors(&key, &cfg, &p, depth[id])?;
        if next.is_empty() {
            g.terminal[id] = Some(ExploreOutcome::Stuck);
            continue;
        }
        for (robots, moves) in next {
            // The successor is written in this state's frame.
            let (k, h) = canonical(&key.0, &robots, moves);
            let (sid, fresh) = g.intern(k);
            if fresh {
                if g.keys.len() > bounds.max_states {
                    return Err(Error::ResourceExhausted { explored: g.keys.len() });
                }
                depth.push(depth[id] + 1);
                queue.push_back(sid);
            }
            g.edges[id].push((sid, h.inverse()));
        }
    }
    let outcomes = collect(&g, root);
    let back = h0.inverse();
    let outcomes: BTreeSet<ExploreOutcome> = outcomes.iter().map(|o| o.mapped(&back)).collect();
    let moves = outcomes.iter().filter_map(|o| match o {
        ExploreOutcome::Gathered { total_moves, .. } => Some(*total_moves),
        _ => None,
    });
    Ok(ExploreReport {
        min_moves: moves.clone().min(),
        max_moves: moves.max(),
        outcomes,
        states: g.keys.len(),
    })
}

/// Outcomes reachable from `root`, each in the frame of the state it is
/// stored for. Moves strictly lower the minimum consistency and snapshots
/// only fill in destinations, so the state graph has no cycles.
fn collect(g: &Graph, root: usize) -> BTreeSet<ExploreOutcome> {
    let n = g.keys.len();
    let mut done: Vec<Option<BTreeSet<ExploreOutcome>>> = vec![None; n];
    let mut stack = vec![(root, false)];
    while let Some((id, expanded)) = stack.pop() {
        if done[id].is_some() {
            continue;
        }
        if let Some(t) = &g.terminal[id] {
            done[id] = Some(BTreeSet::from([t.clone()]));
            continue;
        }
        if !expanded {
            stack.push((id, true));
            stack.extend(
                g.edges[id]
                    .iter()
                    .filter(|(s, _)| done[*s].is_none())
                    .map(|&(s, _)| (s, false)),
            );
            continue;
        }
        let mut acc = BTreeSet::new();
        for (s, h) in &g.edges[id] {
            if let Some(set) = &done[*s] {
                acc.extend(set.iter().map(|o| o.mapped(h)));
            }
        }
        done[id] = Some(acc);
    }
    done[root].take().unwrap_or_default()
}
