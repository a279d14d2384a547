//! Independent references used to certify the implementation. The
//! formulas here are rewritten from the definitions and share no code
//! with the configuration methods they check.

mod explore;

use std::collections::{BTreeMap, BTreeSet};

use crate::config::Configuration;
use crate::node::{Isometry, Node};
use crate::rect::Lines;
use crate::symmetry::SymmetryKind;

pub use explore::{explore_schedules, ExploreBounds, ExploreOutcome, ExploreReport};

fn cost_at(m: Node, robots: &[(i64, i64, u64)]) -> u64 {
    robots
        .iter()
        .map(|&(x, y, c)| ((x - m.x).unsigned_abs() + (y - m.y).unsigned_abs()) * c)
        .sum()
}

fn weber_of(meeting: &BTreeSet<Node>, robots: &[(i64, i64, u64)]) -> BTreeSet<Node> {
    let costs: Vec<(Node, u64)> = meeting.iter().map(|&m| (m, cost_at(m, robots))).collect();
    let best = costs.iter().map(|&(_, c)| c).min().unwrap_or(0);
    costs.into_iter().filter(|&(_, c)| c == best).map(|(m, _)| m).collect()
}

fn raw(config: &Configuration, weak: bool) -> Vec<(i64, i64, u64)> {
    config
        .robots()
        .iter()
        .map(|(v, &c)| (v.x, v.y, if weak { 1 } else { u64::from(c) }))
        .collect()
}

/// Weber nodes by direct enumeration of the meeting nodes.
pub fn brute_force_weber(config: &Configuration) -> BTreeSet<Node> {
    weber_of(config.meeting_nodes(), &raw(config, false))
}

/// Cheapest total number of moves to gather on some meeting node.
pub fn optimal_cost(config: &Configuration) -> u64 {
    let robots = raw(config, false);
    config
        .meeting_nodes()
        .iter()
        .map(|&m| cost_at(m, &robots))
        .min()
        .unwrap_or(0)
}

/// Whether robots that only see occupied nodes, not how many robots sit
/// on them, would compute a different Weber set.
pub fn weak_vs_strong_divergence(config: &Configuration) -> bool {
    let meeting = config.meeting_nodes();
    weber_of(meeting, &raw(config, false)) != weber_of(meeting, &raw(config, true))
}

/// Smallest and largest coordinates over robots and meeting nodes.
pub fn brute_mer(config: &Configuration) -> (Node, Node) {
    let pts: Vec<Node> = config
        .meeting_nodes()
        .iter()
        .chain(config.robots().keys())
        .copied()
        .collect();
    let xs = pts.iter().map(|n| n.x);
    let ys = pts.iter().map(|n| n.y);
    (
        Node::new(xs.clone().min().unwrap_or(0), ys.clone().min().unwrap_or(0)),
        Node::new(xs.max().unwrap_or(0), ys.max().unwrap_or(0)),
    )
}

/// The dense `(meeting flag, robot count)` string read from `corner` of the
/// enclosing rectangle: line by line along `lines`, each line walked away
/// from the corner.
pub fn brute_corner_string(config: &Configuration, corner: Node, lines: Lines) -> Vec<(bool, u32)> {
    let (lo, hi) = brute_mer(config);
    let xs: Vec<i64> = if corner.x == lo.x {
        (lo.x..=hi.x).collect()
    } else {
        (lo.x..=hi.x).rev().collect()
    };
    let ys: Vec<i64> = if corner.y == lo.y {
        (lo.y..=hi.y).collect()
    } else {
        (lo.y..=hi.y).rev().collect()
    };
    let cell = |x, y| {
        let n = Node::new(x, y);
        (config.is_meeting(n), config.count(n))
    };
    match lines {
        Lines::Vertical => xs.iter().flat_map(|&x| ys.iter().map(move |&y| cell(x, y))).collect(),
        Lines::Horizontal => ys.iter().flat_map(|&y| xs.iter().map(move |&x| cell(x, y))).collect(),
    }
}

/// Symmetry kind found by trying every lattice isometry that maps the
/// labelled point set onto its own bounding box.
pub fn brute_symmetry_kind(config: &Configuration) -> SymmetryKind {
    let mut labels: BTreeMap<Node, (bool, u32)> = config.meeting_nodes().iter().map(|&m| (m, (true, 0))).collect();
    for (&v, &c) in config.robots() {
        labels.entry(v).or_insert((false, 0)).1 = c;
    }
    let (lo, _) = brute_mer(config);
    let mut reflections = 0;
    let mut quarter = false;
    let mut half = false;
    for g in Isometry::linear_parts().skip(1) {
        let img: Vec<(Node, (bool, u32))> = labels.iter().map(|(&n, &l)| (g.apply(n), l)).collect();
        let mx = img.iter().map(|(n, _)| n.x).min().unwrap_or(0);
        let my = img.iter().map(|(n, _)| n.y).min().unwrap_or(0);
        let moved: BTreeMap<Node, (bool, u32)> = img
            .into_iter()
            .map(|(n, l)| (Node::new(n.x - mx + lo.x, n.y - my + lo.y), l))
            .collect();
        if moved != labels {
            continue;
        }
        match (g.reflect, g.quarter_turns) {
            (true, _) => reflections += 1,
            (false, 2) => half = true,
            _ => quarter = true,
        }
    }
    if reflections >= 2 {
        SymmetryKind::MultipleAxes
    } else if quarter {
        SymmetryKind::Rotation90
    } else if half {
        SymmetryKind::Rotation180
    } else if reflections == 1 {
        SymmetryKind::Reflection
    } else {
        SymmetryKind::Asymmetric
    }
}
