//! Reflection and rotation symmetries of finite node sets.
//!
//! Any symmetry of a finite set fixes its bounding box, so the only
//! candidate axes are the box's two mid-lines and (for a square box) its
//! diagonals, and the only candidate rotation center is the box center.
//! Positions are kept in doubled coordinates so half-integer axes and
//! centers stay exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::config::Configuration;
use crate::node::Node;
use crate::rect::Rectangle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisOrientation {
    /// Parallel to the x axis.
    Horizontal,
    /// Parallel to the y axis.
    Vertical,
    /// Slope +1.
    Diagonal,
    /// Slope -1.
    AntiDiagonal,
}

/// A reflection axis. `pos2` is the doubled offset: `2y` for horizontal,
/// `2x` for vertical, `2(y - x)` for diagonal and `2(x + y)` for
/// anti-diagonal axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axis {
    pub orientation: AxisOrientation,
    pub pos2: i64,
}

impl Axis {
    fn value2(&self, n: Node) -> i64 {
        match self.orientation {
            AxisOrientation::Horizontal => 2 * n.y,
            AxisOrientation::Vertical => 2 * n.x,
            AxisOrientation::Diagonal => 2 * (n.y - n.x),
            AxisOrientation::AntiDiagonal => 2 * (n.x + n.y),
        }
    }

    /// -1, 0 or +1 depending on which open half-plane holds `n`.
    pub fn side(&self, n: Node) -> i32 {
        (self.value2(n) - self.pos2).signum() as i32
    }

    pub fn contains(&self, n: Node) -> bool {
        self.side(n) == 0
    }

    /// Distance-like measure of how far `n` is from the axis (in doubled
    /// units along the axis normal).
    pub fn offset2(&self, n: Node) -> u64 {
        self.value2(n).abs_diff(self.pos2)
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(
            self.orientation,
            AxisOrientation::Diagonal | AxisOrientation::AntiDiagonal
        )
    }

    /// Mirror image of `n`; the result may be a half-integer point, in
    /// which case `None` is returned.
    pub fn reflect(&self, n: Node) -> Option<Node> {
        let p = self.pos2;
        let r = match self.orientation {
            AxisOrientation::Vertical => (2 * p - 2 * n.x, 2 * n.y),
            AxisOrientation::Horizontal => (2 * n.x, 2 * p - 2 * n.y),
            // y - x = p/2: (x, y) -> (y - p/2, x + p/2)
            AxisOrientation::Diagonal => (2 * n.y - p, 2 * n.x + p),
            // x + y = p/2: (x, y) -> (p/2 - y, p/2 - x)
            AxisOrientation::AntiDiagonal => (p - 2 * n.y, p - 2 * n.x),
        };
        halve(r)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = half(self.pos2);
        match self.orientation {
            AxisOrientation::Horizontal => write!(f, "y={v}"),
            AxisOrientation::Vertical => write!(f, "x={v}"),
            AxisOrientation::Diagonal => write!(f, "y-x={v}"),
            AxisOrientation::AntiDiagonal => write!(f, "x+y={v}"),
        }
    }
}

fn half(v2: i64) -> String {
    if v2 % 2 == 0 {
        format!("{}", v2 / 2)
    } else {
        format!("{}.5", (v2 - 1).div_euclid(2))
    }
}

fn halve((x2, y2): (i64, i64)) -> Option<Node> {
    (x2 % 2 == 0 && y2 % 2 == 0).then(|| Node::new(x2 / 2, y2 / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RotationAngle {
    Half,
    Quarter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    /// Doubled center coordinates.
    pub center2: (i64, i64),
    pub angle: RotationAngle,
}

impl Rotation {
    /// The center as a grid node, if it is one.
    pub fn center_node(&self) -> Option<Node> {
        halve(self.center2)
    }

    pub fn degrees(&self) -> u32 {
        match self.angle {
            RotationAngle::Half => 180,
            RotationAngle::Quarter => 90,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryKind {
    Asymmetric,
    Reflection,
    Rotation180,
    Rotation90,
    MultipleAxes,
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryKind::Asymmetric => "asymmetric",
            SymmetryKind::Reflection => "reflection",
            SymmetryKind::Rotation180 => "rotation180",
            SymmetryKind::Rotation90 => "rotation90",
            SymmetryKind::MultipleAxes => "multiple_axes",
        })
    }
}

/// Every symmetry of a set, plus the strongest kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryDescriptor {
    pub kind: SymmetryKind,
    pub axes: Vec<Axis>,
    pub rotation: Option<Rotation>,
    /// Doubled bounding-box center of the analysed set.
    pub center2: (i64, i64),
}

impl SymmetryDescriptor {
    pub fn is_asymmetric(&self) -> bool {
        self.kind == SymmetryKind::Asymmetric
    }

    /// The axis when there is exactly one.
    pub fn single_axis(&self) -> Option<Axis> {
        (self.axes.len() == 1).then(|| self.axes[0])
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    pub fn center_node(&self) -> Option<Node> {
        halve(self.center2)
    }
}

/// The seven non-trivial linear symmetries of the square lattice, applied
/// about a doubled center. Returns `None` when the image is not a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Reflect(AxisOrientation),
    Rot90,
    Rot180,
    Rot270,
}

fn apply_op(op: Op, (cx, cy): (i64, i64), n: Node) -> Option<Node> {
    let (x, y) = (2 * n.x - cx, 2 * n.y - cy);
    let (x, y) = match op {
        Op::Reflect(AxisOrientation::Vertical) => (-x, y),
        Op::Reflect(AxisOrientation::Horizontal) => (x, -y),
        Op::Reflect(AxisOrientation::Diagonal) => (y, x),
        Op::Reflect(AxisOrientation::AntiDiagonal) => (-y, -x),
        Op::Rot90 => (-y, x),
        Op::Rot180 => (-x, -y),
        Op::Rot270 => (y, -x),
    };
    halve((x + cx, y + cy))
}

fn axis_through(orientation: AxisOrientation, (cx, cy): (i64, i64)) -> Axis {
    let pos2 = match orientation {
        AxisOrientation::Vertical => cx,
        AxisOrientation::Horizontal => cy,
        AxisOrientation::Diagonal => cy - cx,
        AxisOrientation::AntiDiagonal => cx + cy,
    };
    Axis { orientation, pos2 }
}

fn preserves(op: Op, center: (i64, i64), weights: &BTreeMap<Node, (bool, u32)>) -> bool {
    weights.iter().all(|(&n, w)| match apply_op(op, center, n) {
        Some(img) => weights.get(&img) == Some(w),
        None => false,
    })
}

fn describe(weights: &BTreeMap<Node, (bool, u32)>) -> SymmetryDescriptor {
    let rect = Rectangle::bounding(weights.keys().copied()).expect("non-empty set");
    let center = rect.center2();
    let axes: Vec<Axis> = [
        AxisOrientation::Horizontal,
        AxisOrientation::Vertical,
        AxisOrientation::Diagonal,
        AxisOrientation::AntiDiagonal,
    ]
    .into_iter()
    .filter(|&o| preserves(Op::Reflect(o), center, weights))
    .map(|o| axis_through(o, center))
    .collect();
    let rotation = if preserves(Op::Rot90, center, weights) {
        debug_assert!(preserves(Op::Rot270, center, weights));
        Some(RotationAngle::Quarter)
    } else if preserves(Op::Rot180, center, weights) {
        Some(RotationAngle::Half)
    } else {
        None
    }
    .map(|angle| Rotation { center2: center, angle });
    let kind = if axes.len() >= 2 {
        SymmetryKind::MultipleAxes
    } else if let Some(r) = rotation {
        match r.angle {
            RotationAngle::Quarter => SymmetryKind::Rotation90,
            RotationAngle::Half => SymmetryKind::Rotation180,
        }
    } else if axes.len() == 1 {
        SymmetryKind::Reflection
    } else {
        SymmetryKind::Asymmetric
    };
    SymmetryDescriptor {
        kind,
        axes,
        rotation,
        center2: center,
    }
}

/// Symmetries of the meeting-node set alone.
pub fn meeting_symmetry(meeting: &BTreeSet<Node>) -> SymmetryDescriptor {
    describe(&meeting.iter().map(|&m| (m, (true, 0))).collect())
}

/// Symmetries of the whole configuration: meeting flags and robot counts
/// must both be preserved.
pub fn config_symmetry(config: &Configuration) -> SymmetryDescriptor {
    describe(&labelled(config))
}

fn labelled(config: &Configuration) -> BTreeMap<Node, (bool, u32)> {
    let mut w: BTreeMap<Node, (bool, u32)> = config.meeting_nodes().iter().map(|&m| (m, (true, 0))).collect();
    for (&v, &c) in config.robots() {
        w.entry(v).or_insert((false, 0)).1 = c;
    }
    w
}

/// Whether the configuration is invariant under the reflection in `axis`.
pub fn config_preserved_by_axis(config: &Configuration, axis: &Axis) -> bool {
    let w = labelled(config);
    w.iter()
        .all(|(&n, lab)| axis.reflect(n).and_then(|img| w.get(&img)) == Some(lab))
}

/// Whether the configuration is invariant under a half turn about the
/// doubled center `center2`.
pub fn config_preserved_by_half_turn(config: &Configuration, center2: (i64, i64)) -> bool {
    preserves(Op::Rot180, center2, &labelled(config))
}
