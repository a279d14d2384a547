//! Partition of configurations into classes, solvability, balance and the
//! demarcation of the half-planes and quadrants used to fix the target.

use std::cmp::Ordering;
use std::fmt;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::frame::{Frame, Pair};
use crate::node::Node;
use crate::rect::{Lines, Rectangle, Scan};
use crate::symmetry::{
    config_preserved_by_axis, config_preserved_by_half_turn, meeting_symmetry, Axis, SymmetryDescriptor, SymmetryKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Major {
    I1,
    I2,
    I3,
    I4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Minor {
    None,
    A,
    B1,
    B2,
    B3,
    B4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassLabel {
    pub major: Major,
    pub minor: Minor,
    pub gatherable: bool,
    pub in_u_prime: bool,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let major = match self.major {
            Major::I1 => "I1",
            Major::I2 => "I2",
            Major::I3 => "I3",
            Major::I4 => "I4",
        };
        let minor = match self.minor {
            Minor::None => "",
            Minor::A => "a",
            Minor::B1 => "b1",
            Minor::B2 => "b2",
            Minor::B3 => "b3",
            Minor::B4 => "b4",
        };
        write!(f, "{major}{minor}")
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("unknown class label {s:?}"));
        let (major, rest) = match s.get(..2) {
            Some("I1") => (Major::I1, &s[2..]),
            Some("I2") => (Major::I2, &s[2..]),
            Some("I3") => (Major::I3, &s[2..]),
            Some("I4") => (Major::I4, &s[2..]),
            _ => return Err(bad()),
        };
        let minor = match rest {
            "" => Minor::None,
            "a" => Minor::A,
            "b1" => Minor::B1,
            "b2" => Minor::B2,
            "b3" => Minor::B3,
            "b4" => Minor::B4,
            _ => return Err(bad()),
        };
        let ok = match major {
            Major::I1 | Major::I2 => minor == Minor::None,
            Major::I3 => minor != Minor::None,
            Major::I4 => !matches!(minor, Minor::None | Minor::B4),
        };
        if !ok {
            return Err(bad());
        }
        Ok(ClassLabel {
            major,
            minor,
            gatherable: !matches!(minor, Minor::B3 | Minor::B4),
            in_u_prime: major == Major::I3 && minor == Minor::B3,
        })
    }
}

/// How the configuration itself is symmetric, as far as the algorithm
/// cares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigSymmetry {
    None,
    /// Invariant under the reflection in this axis (and no rotation).
    Axis(Axis),
    /// Invariant under a rotation about the meeting-node center.
    Rotation,
}

/// Everything derived from one snapshot that classification and the
/// algorithm both need.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub weber: Vec<Node>,
    pub frame: Frame,
    pub potential: Vec<Node>,
    pub meeting: SymmetryDescriptor,
    pub config_symmetry: ConfigSymmetry,
    pub label: ClassLabel,
    /// Reason attached to an ungatherable label.
    pub reason: Option<String>,
}

impl Analysis {
    pub fn new(config: &Configuration) -> Analysis {
        let weber = config.weber_nodes();
        let frame = Frame::new(config);
        let potential = frame.potential_weber(&weber);
        let meeting = meeting_symmetry(config.meeting_nodes());
        let mut config_symmetry = ConfigSymmetry::None;
        let mut reason = None;
        let (major, minor) = if weber.len() == 1 {
            (Major::I1, Minor::None)
        } else {
            match meeting.kind {
                SymmetryKind::Asymmetric => (Major::I2, Minor::None),
                SymmetryKind::Reflection => {
                    let axis = meeting.axes[0];
                    if config_preserved_by_axis(config, &axis) {
                        config_symmetry = ConfigSymmetry::Axis(axis);
                        let minor = axis_minor(config, &weber, &axis);
                        reason = axis_reason(minor, &axis);
                        (Major::I3, minor)
                    } else {
                        (Major::I3, Minor::A)
                    }
                }
                _ => {
                    let c2 = meeting.center2;
                    if config_preserved_by_half_turn(config, c2) {
                        config_symmetry = ConfigSymmetry::Rotation;
                        let c = meeting.center_node();
                        let minor = if c.is_some_and(|c| weber.contains(&c)) {
                            Minor::B1
                        } else if c.is_some_and(|c| config.count(c) > 0) {
                            Minor::B2
                        } else {
                            reason = Some(
                                "rotational symmetry with neither a robot nor a meeting node on the center".into(),
                            );
                            Minor::B3
                        };
                        (Major::I4, minor)
                    } else if let Some(&axis) = meeting.axes.iter().find(|a| config_preserved_by_axis(config, a)) {
                        config_symmetry = ConfigSymmetry::Axis(axis);
                        let minor = match axis_minor(config, &weber, &axis) {
                            Minor::B4 => Minor::B3,
                            m => m,
                        };
                        reason = axis_reason(minor, &axis);
                        (Major::I4, minor)
                    } else {
                        (Major::I4, Minor::A)
                    }
                }
            }
        };
        let gatherable = !matches!(minor, Minor::B3 | Minor::B4);
        let in_u_prime = major == Major::I3
            && minor == Minor::B3
            && meeting
                .single_axis()
                .is_some_and(|a| config.meeting_nodes().iter().any(|&m| a.contains(m)));
        Analysis {
            weber,
            frame,
            potential,
            meeting,
            config_symmetry,
            label: ClassLabel {
                major,
                minor,
                gatherable,
                in_u_prime,
            },
            reason,
        }
    }

    /// The single axis of the meeting nodes (class I3).
    pub fn axis(&self) -> Option<Axis> {
        (self.label.major == Major::I3).then(|| self.meeting.axes[0])
    }

    /// Doubled center of the meeting nodes (class I4).
    pub fn center2(&self) -> Option<(i64, i64)> {
        (self.label.major == Major::I4).then_some(self.meeting.center2)
    }
}

fn axis_minor(config: &Configuration, weber: &[Node], axis: &Axis) -> Minor {
    if weber.iter().any(|&w| axis.contains(w)) {
        Minor::B1
    } else if config.robot_positions().any(|v| axis.contains(v)) {
        Minor::B2
    } else if config.meeting_nodes().iter().any(|&m| axis.contains(m)) {
        Minor::B3
    } else {
        Minor::B4
    }
}

fn axis_reason(minor: Minor, axis: &Axis) -> Option<String> {
    match minor {
        Minor::B3 => Some(format!(
            "symmetric about {axis} with no robot and no Weber node on the axis"
        )),
        Minor::B4 => Some(format!(
            "symmetric about {axis} with no robot and no meeting node on the axis"
        )),
        _ => None,
    }
}

/// Class of the configuration.
pub fn classify(config: &Configuration) -> ClassLabel {
    Analysis::new(config).label
}

/// Whether gathering on a Weber node can be guaranteed, with the reason
/// when it cannot.
pub fn is_gatherable(config: &Configuration) -> (bool, Option<String>) {
    let a = Analysis::new(config);
    (a.label.gatherable, a.reason)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    C1,
    C21,
    C22,
    C3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C21 => "C21",
            Condition::C22 => "C22",
            Condition::C3 => "C3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionId {
    HPlus,
    HMinus,
    HPlusPlus,
    HPlusMinus,
    HMinusPlus,
    HMinusMinus,
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionId::HPlus => "H+",
            RegionId::HMinus => "H-",
            RegionId::HPlusPlus => "H++",
            RegionId::HPlusMinus => "H+-",
            RegionId::HMinusPlus => "H-+",
            RegionId::HMinusMinus => "H--",
        })
    }
}

/// An open half-plane or open quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// Nodes strictly on `side` of `axis`.
    Half { axis: Axis, side: i32 },
    /// Nodes with `sign(2x - cx) = sx` and `sign(2y - cy) = sy`.
    Quadrant { center2: (i64, i64), sx: i32, sy: i32 },
}

impl Region {
    pub fn contains(&self, n: Node) -> bool {
        match *self {
            Region::Half { axis, side } => axis.side(n) == side,
            Region::Quadrant { center2, sx, sy } => quadrant_of(center2, n) == Some((sx, sy)),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i32| if s > 0 { '+' } else { '-' };
        match *self {
            Region::Half { axis, side } => write!(f, "{}side of {axis}", sign(side)),
            Region::Quadrant { sx, sy, .. } => write!(f, "quadrant({}x,{}y)", sign(sx), sign(sy)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegionTag {
    pub id: RegionId,
    pub region: Region,
}

/// Open quadrant of `n` about the doubled center; `None` on either line.
pub fn quadrant_of(center2: (i64, i64), n: Node) -> Option<(i32, i32)> {
    let sx = (2 * n.x - center2.0).signum() as i32;
    let sy = (2 * n.y - center2.1).signum() as i32;
    (sx != 0 && sy != 0).then_some((sx, sy))
}

/// Which half of `axis` a leading pair belongs to: the half holding its
/// corner, or for a corner on the axis, the half holding the far end of
/// the side its scan lines run parallel to.
pub fn pair_side(rect: &Rectangle, axis: &Axis, p: Pair) -> i32 {
    let s = axis.side(p.corner.node);
    if s != 0 {
        return s;
    }
    let c = p.corner;
    let end = match p.lines {
        Lines::Vertical => Node::new(c.node.x, c.node.y + c.sy * rect.height() as i64),
        Lines::Horizontal => Node::new(c.node.x + c.sx * rect.width() as i64, c.node.y),
    };
    axis.side(end)
}

fn half_counts(axis: &Axis, nodes: impl Iterator<Item = (Node, u32)>) -> (u32, u32) {
    let (mut neg, mut pos) = (0, 0);
    for (n, c) in nodes {
        match axis.side(n) {
            -1 => neg += c,
            1 => pos += c,
            _ => {}
        }
    }
    (neg, pos)
}

fn robots_weighted(config: &Configuration) -> impl Iterator<Item = (Node, u32)> + '_ {
    config.robots().iter().map(|(&n, &c)| (n, c))
}

const QUADRANTS: [(i32, i32); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

fn quadrant_robot_count(config: &Configuration, center2: (i64, i64), q: (i32, i32)) -> u32 {
    robots_weighted(config)
        .filter(|&(n, _)| quadrant_of(center2, n) == Some(q))
        .map(|(_, c)| c)
        .sum()
}

/// Quadrants holding the maximum (positive) number of potential Weber
/// nodes.
fn max_potential_quadrants(a: &Analysis, center2: (i64, i64)) -> Vec<(i32, i32)> {
    let counts: Vec<((i32, i32), usize)> = QUADRANTS
        .iter()
        .map(|&q| {
            (
                q,
                a.potential
                    .iter()
                    .filter(|&&w| quadrant_of(center2, w) == Some(q))
                    .count(),
            )
        })
        .collect();
    let best = counts.iter().map(|&(_, c)| c).max().unwrap_or(0);
    if best == 0 {
        return Vec::new();
    }
    counts.into_iter().filter(|&(_, c)| c == best).map(|(q, _)| q).collect()
}

fn balanced_among(config: &Configuration, center2: (i64, i64), qs: &[(i32, i32)]) -> bool {
    let counts: Vec<u32> = qs.iter().map(|&q| quadrant_robot_count(config, center2, q)).collect();
    let (Some(&mx), Some(&mn)) = (counts.iter().max(), counts.iter().min()) else {
        return false;
    };
    counts.iter().filter(|&&c| c == mx).count() > 1 || counts.iter().filter(|&&c| c == mn).count() > 1
}

/// Whether an I3a or I4a configuration is balanced.
pub fn is_balanced(config: &Configuration) -> Result<bool> {
    let a = Analysis::new(config);
    match (a.label.major, a.label.minor) {
        (Major::I3, Minor::A) => {
            let axis = a.meeting.axes[0];
            let (neg, pos) = half_counts(&axis, robots_weighted(config));
            Ok(neg == pos)
        }
        (Major::I4, Minor::A) => {
            let c2 = a.meeting.center2;
            let qs = max_potential_quadrants(&a, c2);
            let qs = if qs.is_empty() { QUADRANTS.to_vec() } else { qs };
            Ok(balanced_among(config, c2, &qs))
        }
        _ => Err(Error::Domain(format!(
            "balance is defined for I3a and I4a, not {}",
            a.label
        ))),
    }
}

/// Condition C1, C21, C22 or C3 of an I3 or I4 configuration.
pub fn condition(config: &Configuration) -> Result<Condition> {
    condition_of(config, &Analysis::new(config))
}

pub fn condition_of(config: &Configuration, a: &Analysis) -> Result<Condition> {
    match a.label.major {
        Major::I3 => {
            let axis = a.meeting.axes[0];
            let (neg, pos) = half_counts(&axis, a.potential.iter().map(|&w| (w, 1)));
            if neg + pos == 0 {
                return Ok(Condition::C3);
            }
            if neg != pos {
                return Ok(Condition::C1);
            }
            let (rn, rp) = half_counts(&axis, robots_weighted(config));
            Ok(if rn == rp { Condition::C21 } else { Condition::C22 })
        }
        Major::I4 => {
            let c2 = a.meeting.center2;
            let qs = max_potential_quadrants(a, c2);
            match qs.len() {
                0 => Ok(Condition::C3),
                1 => Ok(Condition::C1),
                _ if balanced_among(config, c2, &qs) => Ok(Condition::C21),
                _ => Ok(Condition::C22),
            }
        }
        _ => Err(Error::Domain(format!(
            "conditions are defined for I3 and I4, not {}",
            a.label
        ))),
    }
}

/// The half-plane that must hold the target in class I3.
pub fn half_plane_plus(config: &Configuration) -> Result<RegionTag> {
    half_plane_plus_of(config, &Analysis::new(config))
}

pub fn half_plane_plus_of(config: &Configuration, a: &Analysis) -> Result<RegionTag> {
    let axis = a
        .axis()
        .ok_or_else(|| Error::Domain(format!("half-planes are defined for I3, not {}", a.label)))?;
    let tag = |side: i32| RegionTag {
        id: RegionId::HPlus,
        region: Region::Half { axis, side },
    };
    match condition_of(config, a)? {
        Condition::C3 => Err(Error::Domain("no potential Weber node lies off the axis".into())),
        Condition::C1 => {
            let (neg, pos) = half_counts(&axis, a.potential.iter().map(|&w| (w, 1)));
            Ok(tag(if pos > neg { 1 } else { -1 }))
        }
        Condition::C22 => {
            let (neg, pos) = half_counts(&axis, robots_weighted(config));
            Ok(tag(if pos > neg { 1 } else { -1 }))
        }
        Condition::C21 => {
            let keys = a.frame.key_pairs(config);
            let sides: Vec<i32> = keys.iter().map(|&p| pair_side(&a.frame.rect, &axis, p)).collect();
            match sides.first() {
                Some(&s) if s != 0 && sides.iter().all(|&t| t == s) => Ok(tag(-s)),
                _ => Err(Error::Domain(
                    "balanced and symmetric: no key corner separates the halves".into(),
                )),
            }
        }
    }
}

/// The quadrant that must hold the target in class I4.
pub fn quadrant_plus_plus(config: &Configuration) -> Result<RegionTag> {
    quadrant_plus_plus_of(config, &Analysis::new(config))
}

pub fn quadrant_plus_plus_of(config: &Configuration, a: &Analysis) -> Result<RegionTag> {
    let c2 = a
        .center2()
        .ok_or_else(|| Error::Domain(format!("quadrants are defined for I4, not {}", a.label)))?;
    let rect = a.frame.rect;
    let tag = |(sx, sy): (i32, i32)| RegionTag {
        id: RegionId::HPlusPlus,
        region: Region::Quadrant { center2: c2, sx, sy },
    };
    let count = |q| quadrant_robot_count(config, c2, q);
    let qs = max_potential_quadrants(a, c2);
    let cond = condition_of(config, a)?;
    match cond {
        Condition::C1 => Ok(tag(qs[0])),
        Condition::C22 => {
            let best = qs.iter().map(|&q| count(q)).max().unwrap_or(0);
            Ok(tag(*qs.iter().find(|&&q| count(q) == best).expect("non-empty")))
        }
        Condition::C21 => {
            // Among the tied quadrants with the most robots, the one whose
            // corner carries the largest full string.
            let best = qs.iter().map(|&q| count(q)).max().unwrap_or(0);
            let cands: Vec<(i32, i32)> = qs.iter().copied().filter(|&q| count(q) == best).collect();
            pick_by_corner_string(config, a, &rect, c2, &cands, Ordering::Greater)
                .map(tag)
                .ok_or_else(|| Error::Domain("balanced and symmetric: quadrants are indistinguishable".into()))
        }
        Condition::C3 => {
            let counts: Vec<u32> = QUADRANTS.iter().map(|&q| count(q)).collect();
            let mn = *counts.iter().min().expect("four quadrants");
            let cands: Vec<(i32, i32)> = QUADRANTS
                .iter()
                .copied()
                .zip(&counts)
                .filter(|&(_, &c)| c == mn)
                .map(|(q, _)| q)
                .collect();
            if cands.len() == 1 {
                return Ok(tag(cands[0]));
            }
            pick_by_corner_string(config, a, &rect, c2, &cands, Ordering::Less)
                .map(tag)
                .ok_or_else(|| Error::Domain("balanced and symmetric: quadrants are indistinguishable".into()))
        }
    }
}

/// Among quadrants `cands`, the one containing the corner whose string is
/// extreme in direction `want`. Leading pairs are preferred; otherwise all
/// candidate pairs with a corner in the quadrants are used.
fn pick_by_corner_string(
    config: &Configuration,
    a: &Analysis,
    rect: &Rectangle,
    c2: (i64, i64),
    cands: &[(i32, i32)],
    want: Ordering,
) -> Option<(i32, i32)> {
    let in_cands = |p: &Pair| quadrant_of(c2, p.corner.node).is_some_and(|q| cands.contains(&q));
    let mut pairs: Vec<Pair> = a.frame.leading.iter().copied().filter(in_cands).collect();
    if pairs.is_empty() {
        pairs = crate::frame::candidate_pairs(rect)
            .into_iter()
            .filter(in_cands)
            .collect();
    }
    let alphas: Vec<_> = pairs
        .iter()
        .map(|p| Scan::new(*rect, p.corner, p.lines).alpha(config))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    for i in 0..pairs.len() {
        match best.first().map(|&b| alphas[i].cmp_dense(&alphas[b])) {
            None => best.push(i),
            Some(Ordering::Equal) => best.push(i),
            Some(o) if o == want => best = vec![i],
            _ => {}
        }
    }
    let qs: Vec<(i32, i32)> = best
        .iter()
        .filter_map(|&i| quadrant_of(c2, pairs[i].corner.node))
        .collect();
    match qs.first() {
        Some(&q) if qs.iter().all(|&r| r == q) => Some(q),
        _ => None,
    }
}
