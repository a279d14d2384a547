use std::fmt;

/// A vertex of the infinite integer grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub x: i64,
    pub y: i64,
}

impl Node {
    pub const fn new(x: i64, y: i64) -> Self {
        Node { x, y }
    }

    /// The four grid neighbours in a fixed order: +x, -x, +y, -y.
    pub fn neighbours(self) -> [Node; 4] {
        [
            Node::new(self.x + 1, self.y),
            Node::new(self.x - 1, self.y),
            Node::new(self.x, self.y + 1),
            Node::new(self.x, self.y - 1),
        ]
    }

    pub fn is_adjacent(self, other: Node) -> bool {
        manhattan_distance(self, other) == 1
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Node {
    fn from((x, y): (i64, i64)) -> Self {
        Node::new(x, y)
    }
}

/// Length of a shortest grid path between `u` and `v`.
pub fn manhattan_distance(u: Node, v: Node) -> u64 {
    u.x.abs_diff(v.x) + u.y.abs_diff(v.y)
}

/// A grid isometry: one of the eight linear symmetries of the square
/// lattice followed by a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    /// Number of quarter turns (counter-clockwise) applied after the optional
    /// reflection.
    pub quarter_turns: u8,
    /// Reflect across the y axis (x -> -x) before rotating.
    pub reflect: bool,
    pub dx: i64,
    pub dy: i64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        quarter_turns: 0,
        reflect: false,
        dx: 0,
        dy: 0,
    };

    pub fn new(quarter_turns: u8, reflect: bool, dx: i64, dy: i64) -> Self {
        Isometry {
            quarter_turns: quarter_turns % 4,
            reflect,
            dx,
            dy,
        }
    }

    /// All eight linear parts, without translation.
    pub fn linear_parts() -> impl Iterator<Item = Isometry> {
        (0..8u8).map(|i| Isometry::new(i % 4, i >= 4, 0, 0))
    }

    pub fn apply_vector(&self, x: i64, y: i64) -> (i64, i64) {
        let (mut x, mut y) = if self.reflect { (-x, y) } else { (x, y) };
        for _ in 0..self.quarter_turns {
            (x, y) = (-y, x);
        }
        (x, y)
    }

    pub fn apply(&self, n: Node) -> Node {
        let (x, y) = self.apply_vector(n.x, n.y);
        Node::new(x + self.dx, y + self.dy)
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> Isometry {
        // Linear part L = R^k F^r. For a reflection the linear part is an
        // involution; for a pure rotation the inverse is R^{-k}.
        let lin = Isometry::new(self.quarter_turns, self.reflect, 0, 0);
        let inv_lin = if self.reflect {
            lin
        } else {
            Isometry::new((4 - self.quarter_turns) % 4, false, 0, 0)
        };
        let (tx, ty) = inv_lin.apply_vector(-self.dx, -self.dy);
        Isometry {
            dx: tx,
            dy: ty,
            ..inv_lin
        }
    }
}
