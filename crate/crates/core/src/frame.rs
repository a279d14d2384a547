//! Leading corners, key corners and potential Weber nodes.
//!
//! A *pair* is a corner of the enclosing rectangle together with the
//! family of grid lines its scan walks along. Distance strings depend on
//! the meeting nodes and the rectangle only, so the leading pairs stay put
//! for as long as the rectangle does.

use std::cmp::Ordering;
use std::fmt;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::node::Node;
use crate::rect::{compute_mer, Corner, Lines, Rectangle, Scan, SparseString};

/// A corner with its string direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub corner: Corner,
    pub lines: Lines,
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.corner, self.lines)
    }
}

/// Every (corner, direction) whose string is a candidate for the minimum:
/// both directions per corner of a square, otherwise only the lines
/// parallel to the shorter side.
pub fn candidate_pairs(rect: &Rectangle) -> Vec<Pair> {
    let dirs: &[Lines] = match rect.width().cmp(&rect.height()) {
        Ordering::Equal => &[Lines::Vertical, Lines::Horizontal],
        // Wide rectangle: the vertical sides are the short ones.
        Ordering::Greater => &[Lines::Vertical],
        Ordering::Less => &[Lines::Horizontal],
    };
    let mut out = Vec::new();
    for corner in rect.corners() {
        for &lines in dirs {
            out.push(Pair { corner, lines });
        }
    }
    out
}

/// The enclosing rectangle together with its leading pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub rect: Rectangle,
    /// Leading pairs in candidate order.
    pub leading: Vec<Pair>,
}

impl Frame {
    pub fn new(config: &Configuration) -> Frame {
        let rect = compute_mer(config);
        let cands = candidate_pairs(&rect);
        let strings: Vec<Vec<u64>> = cands
            .iter()
            .map(|p| Scan::new(rect, p.corner, p.lines).distances(config))
            .collect();
        let best = strings.iter().min().expect("at least one candidate").clone();
        let leading = cands
            .into_iter()
            .zip(strings)
            .filter(|(_, s)| *s == best)
            .map(|(p, _)| p)
            .collect();
        Frame { rect, leading }
    }

    pub fn scan(&self, p: Pair) -> Scan {
        Scan::new(self.rect, p.corner, p.lines)
    }

    /// Distinct leading corners.
    pub fn leading_corners(&self) -> Vec<Corner> {
        let mut out: Vec<Corner> = Vec::new();
        for p in &self.leading {
            if !out.contains(&p.corner) {
                out.push(p.corner);
            }
        }
        out
    }

    /// The last of `nodes` in the scan of `p`.
    pub fn last_in(&self, p: Pair, nodes: &[Node]) -> Option<Node> {
        self.scan(p).last_of(nodes)
    }

    /// Potential Weber nodes: for each leading pair the last Weber node in
    /// its scan. Sorted and deduplicated.
    pub fn potential_weber(&self, weber: &[Node]) -> Vec<Node> {
        let mut out: Vec<Node> = self.leading.iter().filter_map(|&p| self.last_in(p, weber)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Leading pairs whose full string is minimal.
    pub fn key_pairs(&self, config: &Configuration) -> Vec<Pair> {
        min_alpha_pairs(self.rect, &self.leading, config)
    }
}

/// Pairs among `pairs` whose (flag, count) string is lexicographically
/// smallest.
pub fn min_alpha_pairs(rect: Rectangle, pairs: &[Pair], config: &Configuration) -> Vec<Pair> {
    let alphas: Vec<SparseString> = pairs
        .iter()
        .map(|p| Scan::new(rect, p.corner, p.lines).alpha(config))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    for i in 0..pairs.len() {
        match best.first().map(|&b| alphas[i].cmp_dense(&alphas[b])) {
            None | Some(Ordering::Equal) => best.push(i),
            Some(Ordering::Less) => best = vec![i],
            Some(Ordering::Greater) => {}
        }
    }
    best.into_iter().map(|i| pairs[i]).collect()
}

/// Leading (corner, direction) pairs of the configuration.
pub fn leading_corners(config: &Configuration) -> Vec<Pair> {
    Frame::new(config).leading
}

/// Key corners: the leading pairs with minimal full string. Only defined
/// when there is more than one leading corner.
pub fn key_corners(config: &Configuration) -> Result<Vec<Pair>> {
    let frame = Frame::new(config);
    if frame.leading_corners().len() < 2 {
        return Err(Error::Domain("key corners need at least two leading corners".into()));
    }
    Ok(frame.key_pairs(config))
}

/// Potential Weber nodes of the configuration.
pub fn potential_weber_nodes(config: &Configuration) -> Vec<Node> {
    Frame::new(config).potential_weber(&config.weber_nodes())
}
