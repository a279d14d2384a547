use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::node::{manhattan_distance, Isometry, Node};

/// Coordinates are bounded so that scan indices over any enclosing
/// rectangle fit comfortably in 64 bits.
pub const COORD_LIMIT: i64 = 1 << 30;

/// Minimum number of robots for which the gathering algorithm is defined.
pub const MIN_ROBOTS: u32 = 7;

/// Meeting nodes plus the robot multiplicity function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    meeting: BTreeSet<Node>,
    robots: BTreeMap<Node, u32>,
}

impl Configuration {
    /// Builds a configuration from meeting nodes and robot positions.
    /// Repeated robot positions stack into a multiplicity; repeated meeting
    /// nodes are rejected.
    pub fn new(meeting: impl IntoIterator<Item = Node>, robots: impl IntoIterator<Item = Node>) -> Result<Self> {
        let mut m = BTreeSet::new();
        for node in meeting {
            check_coord(node)?;
            if !m.insert(node) {
                return Err(Error::InvalidConfig(format!("duplicate meeting node {node}")));
            }
        }
        let mut r = BTreeMap::new();
        for node in robots {
            check_coord(node)?;
            *r.entry(node).or_insert(0u32) += 1;
        }
        Self::from_counts(m, r)
    }

    pub fn from_counts(meeting: BTreeSet<Node>, robots: BTreeMap<Node, u32>) -> Result<Self> {
        if meeting.is_empty() {
            return Err(Error::InvalidConfig("no meeting nodes".into()));
        }
        if robots.is_empty() {
            return Err(Error::InvalidConfig("no robots".into()));
        }
        if let Some((node, _)) = robots.iter().find(|(_, &c)| c == 0) {
            return Err(Error::InvalidConfig(format!("zero robot count at {node}")));
        }
        for &node in meeting.iter().chain(robots.keys()) {
            check_coord(node)?;
        }
        Ok(Configuration { meeting, robots })
    }

    /// Checks the extra requirements on a starting configuration: robots
    /// on distinct nodes and at least [`MIN_ROBOTS`] of them.
    pub fn validate_initial(&self) -> Result<()> {
        if let Some((node, c)) = self.robots.iter().find(|(_, &c)| c > 1) {
            return Err(Error::InvalidConfig(format!(
                "{c} robots share node {node}; initial robots must occupy distinct nodes"
            )));
        }
        if self.robot_count() < MIN_ROBOTS {
            return Err(Error::InvalidConfig(format!(
                "{} robots given; the algorithm requires at least {MIN_ROBOTS}",
                self.robot_count()
            )));
        }
        Ok(())
    }

    pub fn meeting_nodes(&self) -> &BTreeSet<Node> {
        &self.meeting
    }

    pub fn robots(&self) -> &BTreeMap<Node, u32> {
        &self.robots
    }

    pub fn robot_positions(&self) -> impl Iterator<Item = Node> + '_ {
        self.robots.keys().copied()
    }

    pub fn is_meeting(&self, node: Node) -> bool {
        self.meeting.contains(&node)
    }

    pub fn count(&self, node: Node) -> u32 {
        self.robots.get(&node).copied().unwrap_or(0)
    }

    /// Total number of robots.
    pub fn robot_count(&self) -> u32 {
        self.robots.values().sum()
    }

    /// The gathering node if every robot sits on one meeting node.
    pub fn gathered_at(&self) -> Option<Node> {
        if self.robots.len() != 1 {
            return None;
        }
        let (&node, _) = self.robots.iter().next()?;
        self.is_meeting(node).then_some(node)
    }

    pub fn has_multiplicity(&self) -> bool {
        self.robots.values().any(|&c| c > 1)
    }

    /// Sum of robot distances to `m`, weighted by multiplicity.
    pub fn consistency(&self, m: Node) -> Result<u64> {
        if !self.is_meeting(m) {
            return Err(Error::NotMeetingNode(m));
        }
        Ok(self.cost_to(m))
    }

    pub(crate) fn cost_to(&self, m: Node) -> u64 {
        self.robots
            .iter()
            .map(|(&v, &c)| manhattan_distance(v, m) * u64::from(c))
            .sum()
    }

    /// Meeting nodes of minimum consistency, in coordinate order.
    pub fn weber_nodes(&self) -> Vec<Node> {
        let costs: Vec<(Node, u64)> = self.meeting.iter().map(|&m| (m, self.cost_to(m))).collect();
        let best = costs.iter().map(|&(_, c)| c).min().unwrap_or(0);
        costs.into_iter().filter(|&(_, c)| c == best).map(|(m, _)| m).collect()
    }

    /// Minimum consistency over all meeting nodes.
    pub fn min_consistency(&self) -> u64 {
        self.meeting.iter().map(|&m| self.cost_to(m)).min().unwrap_or(0)
    }

    /// Moves `k` robots from `from` to `to`.
    pub fn with_move(&self, from: Node, to: Node, k: u32) -> Result<Self> {
        let have = self.count(from);
        if have < k || k == 0 {
            return Err(Error::Domain(format!(
                "cannot move {k} robots from {from} (holds {have})"
            )));
        }
        check_coord(to)?;
        let mut robots = self.robots.clone();
        if have == k {
            robots.remove(&from);
        } else {
            robots.insert(from, have - k);
        }
        *robots.entry(to).or_insert(0) += k;
        Ok(Configuration {
            meeting: self.meeting.clone(),
            robots,
        })
    }

    /// Image of the configuration under a grid isometry.
    pub fn transformed(&self, g: &Isometry) -> Self {
        Configuration {
            meeting: self.meeting.iter().map(|&m| g.apply(m)).collect(),
            robots: self.robots.iter().map(|(&v, &c)| (g.apply(v), c)).collect(),
        }
    }

    /// The weak-multiplicity view: every occupied node holds one robot.
    pub fn collapsed(&self) -> Self {
        Configuration {
            meeting: self.meeting.clone(),
            robots: self.robots.keys().map(|&v| (v, 1)).collect(),
        }
    }
}

fn check_coord(node: Node) -> Result<()> {
    if node.x.abs() > COORD_LIMIT || node.y.abs() > COORD_LIMIT {
        return Err(Error::InvalidConfig(format!(
            "coordinate {node} outside the supported range ±{COORD_LIMIT}"
        )));
    }
    Ok(())
}
