//! Canonical form of a configuration up to grid isometries.

use crate::config::Configuration;
use crate::node::{Isometry, Node};

/// Sort key of a configuration placed with its bounding box at the origin.
pub type CanonKey = (Vec<Node>, Vec<(Node, u32)>);

fn key_under(config: &Configuration, lin: Isometry) -> (CanonKey, Isometry) {
    let pts = config
        .meeting_nodes()
        .iter()
        .chain(config.robots().keys())
        .map(|&n| lin.apply(n));
    let (mx, my) = pts.fold((i64::MAX, i64::MAX), |(mx, my), n| (mx.min(n.x), my.min(n.y)));
    let (mx, my) = if mx == i64::MAX { (0, 0) } else { (mx, my) };
    let g = Isometry {
        dx: -mx,
        dy: -my,
        ..lin
    };
    let mut meeting: Vec<Node> = config.meeting_nodes().iter().map(|&m| g.apply(m)).collect();
    meeting.sort();
    let mut robots: Vec<(Node, u32)> = config.robots().iter().map(|(&v, &c)| (g.apply(v), c)).collect();
    robots.sort();
    ((meeting, robots), g)
}

/// The smallest key over the eight linear parts and every isometry that
/// attains it. More than one means the configuration is symmetric.
pub fn canonical_frames(config: &Configuration) -> (CanonKey, Vec<Isometry>) {
    let mut best: Option<CanonKey> = None;
    let mut frames = Vec::new();
    for lin in Isometry::linear_parts() {
        let (k, g) = key_under(config, lin);
        match best.as_ref().map(|b| k.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => frames.push(g),
            _ => {
                best = Some(k);
                frames = vec![g];
            }
        }
    }
    (best.expect("eight candidates"), frames)
}

/// Canonical key, equal for two configurations exactly when an isometry
/// maps one onto the other.
pub fn canonical_key(config: &Configuration) -> CanonKey {
    canonical_frames(config).0
}
