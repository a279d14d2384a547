//! Enclosing rectangles and the corner scans that give every node of the
//! rectangle a position in a total order.

use std::cmp::Ordering;
use std::fmt;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::node::Node;

/// Axis-aligned rectangle given by its extreme corners (inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub min: Node,
    pub max: Node,
}

impl Rectangle {
    /// Tight bounding rectangle of a non-empty point set.
    pub fn bounding(points: impl IntoIterator<Item = Node>) -> Option<Rectangle> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut r = Rectangle { min: first, max: first };
        for p in it {
            r.min.x = r.min.x.min(p.x);
            r.min.y = r.min.y.min(p.y);
            r.max.x = r.max.x.max(p.x);
            r.max.y = r.max.y.max(p.y);
        }
        Some(r)
    }

    /// Number of grid edges along x.
    pub fn width(&self) -> u64 {
        self.max.x.abs_diff(self.min.x)
    }

    /// Number of grid edges along y.
    pub fn height(&self) -> u64 {
        self.max.y.abs_diff(self.min.y)
    }

    pub fn is_square(&self) -> bool {
        self.width() == self.height()
    }

    pub fn node_count(&self) -> u64 {
        (self.width() + 1) * (self.height() + 1)
    }

    pub fn contains(&self, n: Node) -> bool {
        (self.min.x..=self.max.x).contains(&n.x) && (self.min.y..=self.max.y).contains(&n.y)
    }

    pub fn on_boundary(&self, n: Node) -> bool {
        self.contains(n) && self.sides().iter().any(|s| s.contains(self, n))
    }

    /// Center in doubled coordinates.
    pub fn center2(&self) -> (i64, i64) {
        (self.min.x + self.max.x, self.min.y + self.max.y)
    }

    /// The distinct corners. Degenerate rectangles have one or two.
    pub fn corners(&self) -> Vec<Corner> {
        let mut out: Vec<Corner> = Vec::with_capacity(4);
        for (cx, sx) in [(self.min.x, 1), (self.max.x, -1)] {
            for (cy, sy) in [(self.min.y, 1), (self.max.y, -1)] {
                let c = Corner {
                    node: Node::new(cx, cy),
                    sx: if self.width() == 0 { 1 } else { sx },
                    sy: if self.height() == 0 { 1 } else { sy },
                };
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn sides(&self) -> [Side; 4] {
        [Side::Left, Side::Right, Side::Bottom, Side::Top]
    }

    /// Diagonally opposite corner.
    pub fn opposite(&self, c: Corner) -> Corner {
        let node = Node::new(self.min.x + self.max.x - c.node.x, self.min.y + self.max.y - c.node.y);
        Corner {
            node,
            sx: if self.width() == 0 { 1 } else { -c.sx },
            sy: if self.height() == 0 { 1 } else { -c.sy },
        }
    }
}

/// One side of a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    pub fn contains(self, r: &Rectangle, n: Node) -> bool {
        r.contains(n)
            && match self {
                Side::Left => n.x == r.min.x,
                Side::Right => n.x == r.max.x,
                Side::Bottom => n.y == r.min.y,
                Side::Top => n.y == r.max.y,
            }
    }

    /// Whether the corner lies on this side.
    pub fn touches(self, r: &Rectangle, c: Corner) -> bool {
        self.contains(r, c.node)
    }
}

/// A rectangle corner together with the inward unit directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub node: Node,
    pub sx: i64,
    pub sy: i64,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

/// Which family of grid lines a corner scan walks along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lines {
    /// Lines parallel to the y axis, swept along x.
    Vertical,
    /// Lines parallel to the x axis, swept along y.
    Horizontal,
}

impl fmt::Display for Lines {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lines::Vertical => "vertical",
            Lines::Horizontal => "horizontal",
        })
    }
}

/// A corner plus the string direction: defines a total order on the nodes
/// of the rectangle. Lines parallel to the direction side are visited
/// moving away from the corner; each line starts at the corner's other
/// incident side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scan {
    pub rect: Rectangle,
    pub corner: Corner,
    pub lines: Lines,
}

impl Scan {
    pub fn new(rect: Rectangle, corner: Corner, lines: Lines) -> Self {
        Scan { rect, corner, lines }
    }

    /// Position of `n` in scan order; `None` outside the rectangle.
    pub fn index(&self, n: Node) -> Option<u64> {
        if !self.rect.contains(n) {
            return None;
        }
        let i = ((n.x - self.corner.node.x) * self.corner.sx) as u64;
        let j = ((n.y - self.corner.node.y) * self.corner.sy) as u64;
        Some(match self.lines {
            Lines::Vertical => i * (self.rect.height() + 1) + j,
            Lines::Horizontal => j * (self.rect.width() + 1) + i,
        })
    }

    /// Inverse of [`Scan::index`].
    pub fn node_at(&self, idx: u64) -> Node {
        let (i, j) = match self.lines {
            Lines::Vertical => (idx / (self.rect.height() + 1), idx % (self.rect.height() + 1)),
            Lines::Horizontal => (idx % (self.rect.width() + 1), idx / (self.rect.width() + 1)),
        };
        Node::new(
            self.corner.node.x + self.corner.sx * i as i64,
            self.corner.node.y + self.corner.sy * j as i64,
        )
    }

    /// Scan indices of the meeting nodes, ascending.
    pub fn distances(&self, config: &Configuration) -> Vec<u64> {
        let mut d: Vec<u64> = config.meeting_nodes().iter().filter_map(|&m| self.index(m)).collect();
        d.sort_unstable();
        d
    }

    /// The (meeting flag, robot count) string in sparse form: only nodes
    /// that are meeting nodes or occupied, sorted by scan index.
    pub fn alpha(&self, config: &Configuration) -> SparseString {
        let mut entries: Vec<(u64, bool, u32)> = Vec::new();
        for &m in config.meeting_nodes() {
            if let Some(i) = self.index(m) {
                entries.push((i, true, config.count(m)));
            }
        }
        for (&v, &c) in config.robots() {
            if !config.is_meeting(v) {
                if let Some(i) = self.index(v) {
                    entries.push((i, false, c));
                }
            }
        }
        entries.sort_unstable_by_key(|e| e.0);
        SparseString(entries)
    }

    /// The last of `nodes` in scan order.
    pub fn last_of<'a>(&self, nodes: impl IntoIterator<Item = &'a Node>) -> Option<Node> {
        nodes
            .into_iter()
            .filter_map(|&n| self.index(n).map(|i| (i, n)))
            .max_by_key(|&(i, _)| i)
            .map(|(_, n)| n)
    }

    /// The first of `nodes` in scan order.
    pub fn first_of<'a>(&self, nodes: impl IntoIterator<Item = &'a Node>) -> Option<Node> {
        nodes
            .into_iter()
            .filter_map(|&n| self.index(n).map(|i| (i, n)))
            .min_by_key(|&(i, _)| i)
            .map(|(_, n)| n)
    }
}

/// A (meeting flag, robot count) string over a rectangle stored sparsely;
/// absent indices stand for `(false, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseString(pub Vec<(u64, bool, u32)>);

impl SparseString {
    /// Lexicographic comparison of the dense strings (flag before count).
    pub fn cmp_dense(&self, other: &SparseString) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ia = a.get(i).map_or(u64::MAX, |e| e.0);
            let jb = b.get(j).map_or(u64::MAX, |e| e.0);
            let va = if ia <= jb { (a[i].1, a[i].2) } else { (false, 0) };
            let vb = if jb <= ia { (b[j].1, b[j].2) } else { (false, 0) };
            if ia <= jb {
                i += 1;
            }
            if jb <= ia {
                j += 1;
            }
            match va.cmp(&vb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Materialized corner string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerString {
    pub corner: Corner,
    pub direction: Lines,
    /// Scan positions of the meeting nodes.
    pub distances: Vec<u64>,
    /// One `(meeting flag, robot count)` pair per node of the rectangle.
    pub full: Vec<(bool, u32)>,
}

/// Tight rectangle around robots and meeting nodes.
pub fn compute_mer(config: &Configuration) -> Rectangle {
    Rectangle::bounding(config.meeting_nodes().iter().copied().chain(config.robot_positions()))
        .expect("configurations are non-empty")
}

/// Both strings of `corner` scanned along `direction` over the enclosing
/// rectangle of `config`.
pub fn corner_string(config: &Configuration, corner: Node, direction: Lines) -> Result<CornerString> {
    let rect = compute_mer(config);
    let c = rect
        .corners()
        .into_iter()
        .find(|c| c.node == corner)
        .ok_or_else(|| Error::Domain(format!("{corner} is not a corner of the enclosing rectangle")))?;
    let scan = Scan::new(rect, c, direction);
    let mut full = vec![(false, 0u32); rect.node_count() as usize];
    for (idx, f, l) in scan.alpha(config).0 {
        full[idx as usize] = (f, l);
    }
    Ok(CornerString {
        corner: c,
        direction,
        distances: scan.distances(config),
        full,
    })
}
