//! The oblivious decision function.
//!
//! Every robot recomputes the same [`Plan`] from the snapshot it sees: the
//! target Weber node, the guards pinning the enclosing rectangle, an
//! optional leading robot, and one destination per robot position that is
//! allowed to move. Robots sharing a node share a destination.
//!
//! Every move the plan emits is a step along a shortest path to a Weber
//! node of the snapshot, which is what makes the total number of moves
//! optimal: such a step lowers the minimum consistency by exactly one.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::canon::canonical_frames;
use crate::classify::{pair_side, Analysis, ConfigSymmetry, Major};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::frame::{candidate_pairs, min_alpha_pairs, Pair};
use crate::node::{manhattan_distance, Node};
use crate::rect::{Lines, Rectangle, Scan, Side};
use crate::symmetry::{config_preserved_by_axis, config_preserved_by_half_turn, Axis, SymmetryKind};

/// What a robot sees: the exact counts everywhere and its own position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub configuration: Configuration,
    pub position: Node,
}

impl Snapshot {
    pub fn new(configuration: Configuration, position: Node) -> Result<Snapshot> {
        if configuration.count(position) == 0 {
            return Err(Error::Domain(format!("no robot at {position}")));
        }
        Ok(Snapshot {
            configuration,
            position,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Stay,
    Move(Node),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseLabel {
    GuardHold,
    TargetMove,
    LeadingMove,
    SymmetryBreak,
    Finalization,
    Done,
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseLabel::GuardHold => "guard_hold",
            PhaseLabel::TargetMove => "target_move",
            PhaseLabel::LeadingMove => "leading_move",
            PhaseLabel::SymmetryBreak => "symmetry_break",
            PhaseLabel::Finalization => "finalization",
            PhaseLabel::Done => "done",
        })
    }
}

/// Everything the robots agree on for one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub phase: PhaseLabel,
    pub target: Option<Node>,
    pub guards: BTreeSet<Node>,
    /// Position of the leading robot or of the symmetry breaker.
    pub leader: Option<Node>,
    /// Destination per robot position; absent positions stay.
    pub moves: BTreeMap<Node, Node>,
}

impl Plan {
    pub fn action(&self, position: Node) -> Action {
        match self.moves.get(&position) {
            Some(&d) => Action::Move(d),
            None => Action::Stay,
        }
    }

    /// Phase as seen by the robot at `position`.
    pub fn phase_of(&self, position: Node) -> PhaseLabel {
        if self.phase != PhaseLabel::Finalization && self.guards.contains(&position) {
            PhaseLabel::GuardHold
        } else {
            self.phase
        }
    }

    fn done() -> Plan {
        Plan {
            phase: PhaseLabel::Done,
            target: None,
            guards: BTreeSet::new(),
            leader: None,
            moves: BTreeMap::new(),
        }
    }
}

/// Region bookkeeping used to route robots without crossing back.
#[derive(Clone, Copy, Debug)]
enum Regions {
    None,
    Half(Axis),
}

impl Regions {
    /// Whether `n` lies on the side of `m`. Steps that keep this from
    /// dropping keep the half-plane robot counts monotone.
    fn agreement(&self, n: Node, m: Node) -> i32 {
        match *self {
            Regions::None => 0,
            Regions::Half(axis) => axis.side(n) * axis.side(m),
        }
    }
}

/// Intrinsic preference between an x and a y step when both shorten the
/// remaining distance equally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TieAxis {
    X,
    Y,
}

struct Ctx<'a> {
    config: &'a Configuration,
    a: Analysis,
    tie: TieAxis,
    /// Whether a symmetry break may plan the configurations it would create.
    lookahead: bool,
}

impl<'a> Ctx<'a> {
    fn new(config: &'a Configuration, lookahead: bool) -> Ctx<'a> {
        let a = Analysis::new(config);
        let rect = a.frame.rect;
        let keys = min_alpha_pairs(rect, &candidate_pairs(&rect), config);
        let tie = match keys.first().map(|p| p.lines) {
            Some(l) if keys.iter().all(|p| p.lines == l) => match l {
                Lines::Vertical => TieAxis::Y,
                Lines::Horizontal => TieAxis::X,
            },
            _ => TieAxis::X,
        };
        Ctx {
            config,
            a,
            tie,
            lookahead,
        }
    }

    fn rect(&self) -> Rectangle {
        self.a.frame.rect
    }

    fn scan(&self, p: Pair) -> Scan {
        Scan::new(self.rect(), p.corner, p.lines)
    }

    fn index(&self, p: Pair, n: Node) -> u64 {
        self.scan(p).index(n).expect("node inside the rectangle")
    }

    fn positions(&self) -> impl Iterator<Item = Node> + '_ {
        self.config.robot_positions()
    }

    /// One step from `from` along a shortest path to `to`.
    fn step(&self, from: Node, to: Node, regions: Regions) -> Node {
        let (dx, dy) = (to.x - from.x, to.y - from.y);
        let mut cands: Vec<(Node, bool)> = Vec::with_capacity(2);
        if dx != 0 {
            cands.push((Node::new(from.x + dx.signum(), from.y), true));
        }
        if dy != 0 {
            cands.push((Node::new(from.x, from.y + dy.signum()), false));
        }
        let prefer_x = match dx.abs().cmp(&dy.abs()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.tie == TieAxis::X,
        };
        cands
            .into_iter()
            .max_by_key(|&(n, is_x)| (regions.agreement(n, to), is_x == prefer_x))
            .map(|(n, _)| n)
            .unwrap_or(from)
    }

    /// Boundary-first step used by guards in the finalization: slide along
    /// the rectangle side until collinear with `to`, then head straight in.
    fn boundary_step(&self, from: Node, to: Node) -> Node {
        let r = self.rect();
        if from.x == to.x || from.y == to.y {
            return self.step(from, to, Regions::None);
        }
        let on_vertical = Side::Left.contains(&r, from) || Side::Right.contains(&r, from);
        let on_horizontal = Side::Bottom.contains(&r, from) || Side::Top.contains(&r, from);
        let along_y = Node::new(from.x, from.y + (to.y - from.y).signum());
        let along_x = Node::new(from.x + (to.x - from.x).signum(), from.y);
        match (on_vertical, on_horizontal) {
            (true, false) => along_y,
            (false, true) => along_x,
            _ => self.step(from, to, Regions::None),
        }
    }
}

/// Guard positions for the given pairs: on each side without meeting nodes,
/// the robot closest to the pair's corner when the side touches it and the
/// one farthest along the scan otherwise.
fn guards_for(ctx: &Ctx, pairs: &[Pair]) -> BTreeSet<Node> {
    let rect = ctx.rect();
    let mut out = BTreeSet::new();
    for side in rect.sides() {
        if ctx.config.meeting_nodes().iter().any(|&m| side.contains(&rect, m)) {
            continue;
        }
        let on_side: Vec<Node> = ctx.positions().filter(|&v| side.contains(&rect, v)).collect();
        for &p in pairs {
            let pick = if side.touches(&rect, p.corner) {
                on_side.iter().min_by_key(|&&v| ctx.index(p, v))
            } else {
                on_side.iter().max_by_key(|&&v| ctx.index(p, v))
            };
            out.extend(pick);
        }
    }
    out
}

/// Order in which non-guards are released toward the target.
#[derive(Clone, Copy, Debug)]
enum Waves {
    All,
    /// Robots off the target's side of the axis go first.
    Half(Axis),
}

impl Waves {
    fn wave(&self, n: Node, m: Node) -> u8 {
        match *self {
            Waves::All => 0,
            Waves::Half(axis) => u8::from(axis.side(n) == axis.side(m)),
        }
    }
}

fn guarded_plan(ctx: &Ctx, m: Node, guards: BTreeSet<Node>, regions: Regions, waves: Waves) -> Plan {
    let mut guards = guards;
    guards.remove(&m);
    let pending: Vec<Node> = ctx.positions().filter(|&v| v != m && !guards.contains(&v)).collect();
    let mut moves = BTreeMap::new();
    let phase = if pending.is_empty() {
        for &g in &guards {
            moves.insert(g, ctx.boundary_step(g, m));
        }
        PhaseLabel::Finalization
    } else {
        let first = pending.iter().map(|&v| waves.wave(v, m)).min().expect("non-empty");
        for &v in pending.iter().filter(|&&v| waves.wave(v, m) == first) {
            moves.insert(v, ctx.step(v, m, regions));
        }
        PhaseLabel::TargetMove
    };
    Plan {
        phase,
        target: Some(m),
        guards,
        leader: None,
        moves,
    }
}

/// Plan with every robot heading to `m` and nobody guarding.
fn converge_plan(ctx: &Ctx, m: Node) -> Plan {
    let moves: BTreeMap<Node, Node> = ctx
        .positions()
        .filter(|&v| v != m)
        .map(|v| (v, ctx.step(v, m, Regions::None)))
        .collect();
    let phase = if ctx.config.count(m) >= 2 {
        PhaseLabel::Finalization
    } else {
        PhaseLabel::TargetMove
    };
    Plan {
        phase,
        target: Some(m),
        guards: BTreeSet::new(),
        leader: None,
        moves,
    }
}

/// The robot plan for a configuration.
pub fn plan(config: &Configuration) -> Result<Plan> {
    plan_with(config, true)
}

fn plan_with(config: &Configuration, lookahead: bool) -> Result<Plan> {
    if config.gathered_at().is_some() {
        return Ok(Plan::done());
    }
    let ctx = Ctx::new(config, lookahead);
    let a = &ctx.a;
    if a.weber.len() == 1 {
        return Ok(converge_plan(&ctx, a.weber[0]));
    }
    if !a.label.gatherable {
        return Err(Error::Ungatherable(
            a.reason.clone().unwrap_or_else(|| format!("class {}", a.label)),
        ));
    }
    match a.label.major {
        Major::I1 => Ok(converge_plan(&ctx, a.weber[0])),
        Major::I2 => {
            let m = a.potential[0];
            let guards = guards_for(&ctx, &a.frame.leading);
            Ok(guarded_plan(&ctx, m, guards, Regions::None, Waves::All))
        }
        Major::I3 => plan_axis(&ctx, a.meeting.axes[0], &a.frame.leading.clone()),
        Major::I4 => plan_center(&ctx),
    }
}

/// Class I3, or an I4 configuration symmetric about one of the axes of the
/// meeting nodes (`pairs` then holds the key pairs, which are closed under
/// that reflection).
fn plan_axis(ctx: &Ctx, axis: Axis, pairs: &[Pair]) -> Result<Plan> {
    let a = &ctx.a;
    let north = |nodes: &mut dyn Iterator<Item = Node>| nodes.max_by_key(|&n| ctx.index(pairs[0], n));
    if let Some(m) = north(&mut a.weber.iter().copied().filter(|&w| axis.contains(w))) {
        let guards = guards_for(ctx, pairs);
        return Ok(guarded_plan(ctx, m, guards, Regions::None, Waves::All));
    }
    if a.label.major == Major::I3 && a.potential.len() == 1 {
        let guards = guards_for(ctx, pairs);
        return Ok(guarded_plan(ctx, a.potential[0], guards, Regions::None, Waves::All));
    }
    if a.config_symmetry != ConfigSymmetry::None {
        let mut on_axis: Vec<Node> = ctx.positions().filter(|&v| axis.contains(v)).collect();
        if on_axis.is_empty() {
            return Err(Error::Ungatherable(format!(
                "symmetric about {axis} with nothing on it"
            )));
        }
        on_axis.sort_by_key(|&v| Reverse(ctx.index(pairs[0], v)));
        return Ok(break_off_axis(ctx, axis, pairs, &on_axis));
    }
    let rect = ctx.rect();
    let leading = &a.frame.leading;
    let sides: Vec<i32> = a.potential.iter().map(|&w| axis.side(w)).collect();
    let (mut neg, mut pos) = (0u32, 0u32);
    for (&v, &c) in ctx.config.robots() {
        match axis.side(v) {
            -1 => neg += c,
            1 => pos += c,
            _ => {}
        }
    }
    let (s, balanced) = if sides.iter().all(|&t| t == sides[0]) && sides[0] != 0 {
        (sides[0], false)
    } else if neg != pos {
        (if pos > neg { 1 } else { -1 }, false)
    } else {
        let keys = a.frame.key_pairs(ctx.config);
        let ks: Vec<i32> = keys.iter().map(|&p| pair_side(&rect, &axis, p)).collect();
        match ks.first() {
            Some(&k) if k != 0 && ks.iter().all(|&t| t == k) => (-k, true),
            _ => return Err(Error::Domain("no key corner separates the half-planes".into())),
        }
    };
    let minus: Vec<Pair> = leading
        .iter()
        .copied()
        .filter(|&p| pair_side(&rect, &axis, p) == -s)
        .collect();
    let plus: Vec<Pair> = leading
        .iter()
        .copied()
        .filter(|&p| pair_side(&rect, &axis, p) == s)
        .collect();
    let (Some(&xm), false) = (minus.first(), plus.is_empty()) else {
        return Err(Error::Domain("leading pairs do not straddle the axis".into()));
    };
    let m = ctx
        .scan(xm)
        .last_of(&a.weber)
        .expect("Weber nodes lie in the rectangle");
    let guards = guards_for(ctx, &plus);
    if balanced {
        let other = guards_for(ctx, &minus);
        if let Some(p) = leading_off_axis(ctx, axis, s, plus[0], &guards, &other) {
            return Ok(p);
        }
    }
    Ok(guarded_plan(ctx, m, guards, Regions::Half(axis), Waves::Half(axis)))
}

/// The leading robot of a balanced configuration split by an axis. A robot
/// on the axis steps off if that settles the target. Otherwise the free
/// robot closest to the axis walks to it one step at a time; its offset
/// only shrinks, so it stays the closest, and once it reaches or crosses
/// the axis the halves are unbalanced and the target is fixed.
fn leading_off_axis(
    ctx: &Ctx,
    axis: Axis,
    s: i32,
    plus: Pair,
    guards: &BTreeSet<Node>,
    other: &BTreeSet<Node>,
) -> Option<Plan> {
    let weber = &ctx.a.weber;
    let approaches = |r: Node, n: Node| {
        weber
            .iter()
            .any(|&w| manhattan_distance(n, w) < manhattan_distance(r, w))
    };
    // Either half may end up the target's, so a robot guarding one of them
    // only leads when nothing else can, and one guarding both never does.
    let pinned: BTreeSet<Node> = guards.intersection(other).copied().collect();
    let either: BTreeSet<Node> = guards.union(other).copied().collect();
    let guards = &either;
    let free = |v: &Node| !pinned.contains(v);
    let lead = |r: Node, n: Node, target: Option<Node>| Plan {
        phase: PhaseLabel::LeadingMove,
        target,
        guards: guards.iter().copied().filter(|&v| v != r).collect(),
        leader: Some(r),
        moves: BTreeMap::from([(r, n)]),
    };
    let mut on_axis: Vec<Node> = ctx.positions().filter(free).filter(|&v| axis.contains(v)).collect();
    on_axis.sort_by_key(|&v| Reverse(ctx.index(plus, v)));
    for &r in &on_axis {
        let mut cands: Vec<Node> = r
            .neighbours()
            .into_iter()
            .filter(|&n| axis.side(n) != 0 && approaches(r, n))
            .collect();
        cands.sort_by_key(|&n| axis.side(n) != s);
        let moves: Vec<(Node, Node)> = cands.iter().map(|&n| (r, n)).collect();
        if let Some((r, n, t)) = settling_step(ctx, &moves) {
            return Some(lead(r, n, Some(t)));
        }
    }
    let (_, frames) = canonical_frames(ctx.config);
    let g = frames[0];
    let rect = ctx.rect();
    let on_boundary = |v: Node| rect.sides().iter().any(|side| side.contains(&rect, v));
    let mut walkers: Vec<Node> = ctx.positions().filter(free).filter(|&v| axis.side(v) != 0).collect();
    walkers.sort_by_key(|&v| (guards.contains(&v), axis.offset2(v), on_boundary(v), g.apply(v)));
    if !ctx.lookahead {
        return walkers.first().map(|&r| lead(r, r, None));
    }
    for r in walkers {
        let mut cands: Vec<Node> = r
            .neighbours()
            .into_iter()
            .filter(|&n| (axis.offset2(n) < axis.offset2(r) || axis.side(n) != axis.side(r)) && approaches(r, n))
            .collect();
        cands.sort_by_key(|&n| g.apply(n));
        for n in cands {
            if walk_ok(ctx, r, n) {
                let t = settling_step(ctx, &[(r, n)]).map(|(_, _, t)| t);
                return Some(lead(r, n, t));
            }
        }
    }
    None
}

/// Whether every split of the multiplicity at `r` stepping to `n` leaves a
/// plannable configuration whose target, once fixed, the step approached.
fn walk_ok(ctx: &Ctx, r: Node, n: Node) -> bool {
    (1..=ctx.config.count(r)).all(|k| {
        let Ok(next) = ctx.config.with_move(r, n, k) else {
            return false;
        };
        if next.gathered_at().is_some() {
            return true;
        }
        match plan_with(&next, false) {
            Ok(p) if p.phase == PhaseLabel::LeadingMove && p.target.is_none() => true,
            Ok(p) => p
                .target
                .is_some_and(|t| ctx.a.weber.contains(&t) && manhattan_distance(n, t) < manhattan_distance(r, t)),
            Err(_) => false,
        }
    })
}

/// Symmetric about `axis` with robots on it, northernmost first: one of
/// them steps into the positive half toward the Weber node that half
/// would target. A step that settles the target is preferred; failing
/// that a lone robot breaks, so the break cannot be left half done.
fn break_off_axis(ctx: &Ctx, axis: Axis, pairs: &[Pair], on_axis: &[Node]) -> Plan {
    let a = &ctx.a;
    let rect = ctx.rect();
    let s = 1;
    let minus: Vec<Pair> = pairs
        .iter()
        .copied()
        .filter(|&p| pair_side(&rect, &axis, p) == -s)
        .collect();
    let on_side: Vec<Node> = a.weber.iter().copied().filter(|&w| axis.side(w) == s).collect();
    let dest = |r: Node| {
        let w = minus
            .first()
            .and_then(|&p| ctx.scan(p).last_of(&on_side))
            .or_else(|| on_side.iter().copied().min_by_key(|&w| (manhattan_distance(r, w), w)))
            .expect("a symmetric Weber set off the axis has nodes on both sides");
        ctx.step(r, w, Regions::Half(axis))
    };
    for &r in on_axis {
        let d = dest(r);
        let mut cands = vec![d];
        cands.extend(r.neighbours().into_iter().filter(|&n| n != d && axis.side(n) == s));
        if let Some((n, t)) = break_step(ctx, r, &cands) {
            return break_plan(r, n, Some(t));
        }
    }
    let r = on_axis
        .iter()
        .copied()
        .find(|&r| ctx.config.count(r) == 1)
        .unwrap_or(on_axis[0]);
    break_plan(r, dest(r), None)
}

/// The first candidate step after which the robots agree on a target that
/// the step approached, whichever part of the multiplicity actually moves.
fn settling_step(ctx: &Ctx, cands: &[(Node, Node)]) -> Option<(Node, Node, Node)> {
    if !ctx.lookahead {
        return None;
    }
    cands.iter().find_map(|&(r, n)| {
        let mut target = None;
        for k in 1..=ctx.config.count(r) {
            let next = ctx.config.with_move(r, n, k).ok()?;
            let t = settled_target(ctx, &next)?;
            let approached = ctx.a.weber.contains(&t) && manhattan_distance(n, t) < manhattan_distance(r, t);
            if !approached || target.is_some_and(|u| u != t) {
                return None;
            }
            target = Some(t);
        }
        target.map(|t| (r, n, t))
    })
}

/// The target of `next` if the robots will keep it from then on. With a
/// centrally symmetric set of meeting nodes that takes a Weber center or a
/// duel winner; the other classes keep whatever they select.
fn settled_target(ctx: &Ctx, next: &Configuration) -> Option<Node> {
    if let Some(g) = next.gathered_at() {
        return Some(g);
    }
    let t = plan_with(next, false).ok()?.target?;
    let weber = next.weber_nodes();
    let meeting = &ctx.a.meeting;
    if weber.len() == 1 || matches!(meeting.kind, SymmetryKind::Asymmetric | SymmetryKind::Reflection) {
        return Some(t);
    }
    if meeting.center_node().is_some_and(|c| weber.contains(&c)) {
        return Some(t);
    }
    (duel_winner(next, &duel_pool(&meeting.axes, &weber)) == Some(t)).then_some(t)
}

fn break_step(ctx: &Ctx, r: Node, cands: &[Node]) -> Option<(Node, Node)> {
    let moves: Vec<(Node, Node)> = cands.iter().map(|&n| (r, n)).collect();
    settling_step(ctx, &moves).map(|(_, n, t)| (n, t))
}

fn break_plan(r: Node, dest: Node, target: Option<Node>) -> Plan {
    Plan {
        phase: PhaseLabel::SymmetryBreak,
        target,
        guards: BTreeSet::new(),
        leader: Some(r),
        moves: BTreeMap::from([(r, dest)]),
    }
}

/// Class I4.
fn plan_center(ctx: &Ctx) -> Result<Plan> {
    let a = &ctx.a;
    let center = a.meeting.center_node();
    if let Some(c) = center.filter(|c| a.weber.contains(c)) {
        return Ok(converge_plan(ctx, c));
    }
    let pool = duel_pool(&a.meeting.axes, &a.weber);
    if let Some(m) = duel_winner(ctx.config, &pool) {
        return Ok(converge_plan(ctx, m));
    }
    match a.config_symmetry {
        ConfigSymmetry::Rotation => {
            let c = center
                .filter(|&c| ctx.config.count(c) > 0)
                .ok_or_else(|| Error::Ungatherable("rotational symmetry with an empty center".into()))?;
            let toward: Vec<Node> = c
                .neighbours()
                .into_iter()
                .filter(|&n| {
                    a.weber
                        .iter()
                        .any(|&w| manhattan_distance(n, w) < manhattan_distance(c, w))
                })
                .collect();
            Ok(match break_step(ctx, c, &toward) {
                Some((n, t)) => break_plan(c, n, Some(t)),
                None => break_plan(
                    c,
                    *toward.first().expect("some Weber node differs from the center"),
                    None,
                ),
            })
        }
        ConfigSymmetry::Axis(axis) => {
            if let Some(p) = mirrored_settle(ctx, axis)
                .or_else(|| axis_break(ctx, axis, &pool))
                .or_else(|| mirrored_neutral(ctx, axis, &pool))
            {
                return Ok(p);
            }
            let keys = a.frame.key_pairs(ctx.config);
            plan_axis(ctx, axis, &keys)
        }
        ConfigSymmetry::None => plan_duel(ctx, &pool),
    }
}

/// How `w` compares with `t` for the robots of `config`. Each robot
/// contributes how much nearer it is to `w` than to `t`. While both stay
/// Weber nodes every executed move shortens both distances, so these
/// contributions never change and neither does the comparison.
fn duel(config: &Configuration, w: Node, t: Node) -> Ordering {
    let mut gains: Vec<i64> = Vec::new();
    for (&v, &c) in config.robots() {
        let g = manhattan_distance(v, t) as i64 - manhattan_distance(v, w) as i64;
        gains.extend(std::iter::repeat_n(g, c as usize));
    }
    let mut losses: Vec<i64> = gains.iter().map(|g| -g).collect();
    gains.sort_unstable_by(|a, b| b.cmp(a));
    losses.sort_unstable_by(|a, b| b.cmp(a));
    gains.cmp(&losses)
}

/// The Weber node winning its duel against every other one. Losing nodes
/// can only drop out of the Weber set, so the winner stays the winner.
fn duel_winner(config: &Configuration, weber: &[Node]) -> Option<Node> {
    weber
        .iter()
        .copied()
        .find(|&w| weber.iter().all(|&t| t == w || duel(config, w, t) == Ordering::Greater))
}

/// Symmetric about `axis` with a tie in the pool: a robot and its mirror
/// image step together so that, however much of the pair actually moves,
/// the robots agree on a target both steps approached.
fn mirrored_settle(ctx: &Ctx, axis: Axis) -> Option<Plan> {
    if !ctx.lookahead {
        return None;
    }
    let (_, frames) = canonical_frames(ctx.config);
    let g = frames[0];
    let mirror = |n: Node| {
        axis.reflect(n)
            .expect("robots of a symmetric configuration mirror onto nodes")
    };
    let mut orbits: Vec<(Node, Node)> = ctx
        .positions()
        .map(|r| (r, mirror(r)))
        .filter(|&(r, r2)| r < r2)
        .collect();
    orbits.sort_by_key(|&(r, r2)| g.apply(r).min(g.apply(r2)));
    let weber = &ctx.a.weber;
    for (r, r2) in orbits {
        let mut dests: Vec<Node> = r
            .neighbours()
            .into_iter()
            .filter(|&n| {
                weber
                    .iter()
                    .any(|&w| manhattan_distance(n, w) < manhattan_distance(r, w))
            })
            .collect();
        dests.sort_by_key(|&n| g.apply(n).min(g.apply(mirror(n))));
        for n in dests {
            let n2 = mirror(n);
            let (c1, c2) = (ctx.config.count(r), ctx.config.count(r2));
            let mut nexts: Vec<Configuration> = Vec::new();
            for k in 1..=c1 {
                nexts.extend(ctx.config.with_move(r, n, k).ok());
                nexts.extend(ctx.config.with_move(r2, n2, k).ok());
            }
            nexts.extend(
                ctx.config
                    .with_move(r, n, c1)
                    .and_then(|c| c.with_move(r2, n2, c2))
                    .ok(),
            );
            let targets: Option<Vec<Node>> = nexts.iter().map(|c| settled_target(ctx, c)).collect();
            let Some(t) = targets.and_then(|ts| ts.iter().all(|&t| t == ts[0]).then(|| ts[0])) else {
                continue;
            };
            if manhattan_distance(n, t) < manhattan_distance(r, t)
                && manhattan_distance(n2, t) < manhattan_distance(r2, t)
            {
                return Some(Plan {
                    phase: PhaseLabel::LeadingMove,
                    target: Some(t),
                    guards: BTreeSet::new(),
                    leader: Some(r),
                    moves: BTreeMap::from([(r, n), (r2, n2)]),
                });
            }
        }
    }
    None
}

/// Symmetric about `axis` with a tie: a robot on the axis steps off it,
/// preferably settling the target, else a lone robot toward the pool.
fn axis_break(ctx: &Ctx, axis: Axis, pool: &[Node]) -> Option<Plan> {
    if !ctx.lookahead {
        return None;
    }
    let (_, frames) = canonical_frames(ctx.config);
    let key = |n: Node| frames.iter().map(|f| f.apply(n)).min();
    let mut on_axis: Vec<Node> = ctx.positions().filter(|&v| axis.contains(v)).collect();
    on_axis.sort_by_key(|&v| key(v));
    let steps = |r: Node, to: &[Node]| {
        let mut ns: Vec<Node> = r
            .neighbours()
            .into_iter()
            .filter(|&n| !axis.contains(n) && to.iter().any(|&w| manhattan_distance(n, w) < manhattan_distance(r, w)))
            .collect();
        ns.sort_by_key(|&n| frames[0].apply(n));
        ns
    };
    for &r in &on_axis {
        if let Some((n, t)) = break_step(ctx, r, &steps(r, &ctx.a.weber)) {
            return Some(break_plan(r, n, Some(t)));
        }
    }
    on_axis.iter().filter(|&&r| ctx.config.count(r) == 1).find_map(|&r| {
        steps(r, pool)
            .into_iter()
            .find(|&n| {
                ctx.config
                    .with_move(r, n, 1)
                    .is_ok_and(|c| plan_with(&c, false).is_ok())
            })
            .map(|n| break_plan(r, n, None))
    })
}

/// Symmetric about `axis` with a tie that no pair step settles: a single
/// robot and its mirror image step toward every node of the pool. This
/// keeps the tie and the symmetry while lowering the minimum consistency.
/// If only one of them has moved, the other restores the symmetry next.
fn mirrored_neutral(ctx: &Ctx, axis: Axis, pool: &[Node]) -> Option<Plan> {
    if !ctx.lookahead {
        return None;
    }
    let (_, frames) = canonical_frames(ctx.config);
    let g = frames[0];
    let mirror = |n: Node| {
        axis.reflect(n)
            .expect("robots of a symmetric configuration mirror onto nodes")
    };
    let mut orbits: Vec<(Node, Node)> = ctx
        .positions()
        .filter(|&r| ctx.config.count(r) == 1)
        .map(|r| (r, mirror(r)))
        .filter(|&(r, r2)| r < r2)
        .collect();
    orbits.sort_by_key(|&(r, r2)| g.apply(r).min(g.apply(r2)));
    let toward_all = |r: Node, n: Node| {
        pool.iter()
            .all(|&w| manhattan_distance(n, w) < manhattan_distance(r, w))
    };
    for (r, r2) in orbits {
        let mut dests: Vec<Node> = r.neighbours().into_iter().filter(|&n| toward_all(r, n)).collect();
        dests.sort_by_key(|&n| g.apply(n).min(g.apply(mirror(n))));
        for n in dests {
            let n2 = mirror(n);
            let nexts = [
                ctx.config.with_move(r, n, 1),
                ctx.config.with_move(r2, n2, 1),
                ctx.config.with_move(r, n, 1).and_then(|c| c.with_move(r2, n2, 1)),
            ];
            if nexts
                .iter()
                .all(|c| c.as_ref().is_ok_and(|c| plan_with(c, false).is_ok()))
            {
                return Some(Plan {
                    phase: PhaseLabel::LeadingMove,
                    target: None,
                    guards: BTreeSet::new(),
                    leader: Some(r),
                    moves: BTreeMap::from([(r, n), (r2, n2)]),
                });
            }
        }
    }
    None
}

/// Weber nodes competing for the target in class I4: those on an axis of
/// the meeting nodes if there are any, all of them otherwise. Either way
/// the pool only shrinks as robots approach one of its members.
fn duel_pool(axes: &[Axis], weber: &[Node]) -> Vec<Node> {
    let on_axes: Vec<Node> = weber
        .iter()
        .copied()
        .filter(|&w| axes.iter().any(|x| x.contains(w)))
        .collect();
    if on_axes.is_empty() {
        weber.to_vec()
    } else {
        on_axes
    }
}

/// A symmetric configuration whose break or mirrored step was only partly
/// executed: undoing one observed step gives it back, and the robots
/// whose moves are still pending carry on.
fn completion(ctx: &Ctx) -> Option<Plan> {
    let meeting = &ctx.a.meeting;
    let symmetric = |c: &Configuration| {
        meeting.axes.iter().any(|x| config_preserved_by_axis(c, x)) || config_preserved_by_half_turn(c, meeting.center2)
    };
    let (_, frames) = canonical_frames(ctx.config);
    let mut undo: Vec<(Node, Node)> = ctx
        .positions()
        .flat_map(|u| u.neighbours().into_iter().map(move |v| (u, v)))
        .collect();
    undo.sort_by_key(|&(u, v)| (frames[0].apply(u), frames[0].apply(v)));
    for (u, v) in undo {
        for k in 1..=ctx.config.count(u) {
            let Ok(s) = ctx.config.with_move(u, v, k) else { continue };
            if !symmetric(&s) {
                continue;
            }
            let Ok(p) = plan_with(&s, true) else { continue };
            if p.moves.get(&v) != Some(&u) || !matches!(p.phase, PhaseLabel::SymmetryBreak | PhaseLabel::LeadingMove) {
                continue;
            }
            let pending: BTreeMap<Node, Node> = p
                .moves
                .iter()
                .filter(|&(&a, _)| {
                    if a == v {
                        ctx.config.count(v) > 0
                    } else {
                        ctx.config.count(a) == s.count(a)
                    }
                })
                .map(|(&a, &b)| (a, b))
                .collect();
            let (&r, _) = pending.iter().next()?;
            return Some(Plan {
                phase: PhaseLabel::LeadingMove,
                target: None,
                guards: BTreeSet::new(),
                leader: Some(r),
                moves: pending,
            });
        }
    }
    None
}

/// Asymmetric I4. Without a duel winner, one robot steps so that a winner
/// appears and the step approached it; the candidates are tried in the
/// canonical frame of the configuration.
fn plan_duel(ctx: &Ctx, pool: &[Node]) -> Result<Plan> {
    let a = &ctx.a;
    let leading = |r: Node, n: Node, target: Option<Node>| Plan {
        phase: PhaseLabel::LeadingMove,
        target,
        guards: BTreeSet::new(),
        leader: Some(r),
        moves: BTreeMap::from([(r, n)]),
    };
    if !ctx.lookahead {
        return Ok(Plan {
            phase: PhaseLabel::LeadingMove,
            ..Plan::done()
        });
    }
    let (_, frames) = canonical_frames(ctx.config);
    let g = frames[0];
    let mut cands: Vec<(Node, Node)> = ctx
        .positions()
        .flat_map(|r| r.neighbours().into_iter().map(move |n| (r, n)))
        .filter(|&(r, n)| {
            a.weber
                .iter()
                .any(|&w| manhattan_distance(n, w) < manhattan_distance(r, w))
        })
        .collect();
    cands.sort_by_key(|&(r, n)| (g.apply(r), g.apply(n)));
    if let Some(p) = completion(ctx) {
        return Ok(p);
    }
    if let Some((r, n, t)) = settling_step(ctx, &cands) {
        return Ok(leading(r, n, Some(t)));
    }
    // No single step settles it. Take one that strictly shrinks the Weber
    // set, or else one toward all of it after which the same robot can
    // shrink it. Every such step lowers the minimum consistency, so a
    // winner appears after finitely many of them.
    let safe = |r: Node, n: Node, ok: &dyn Fn(&Configuration) -> bool| {
        (1..=ctx.config.count(r)).all(|k| {
            ctx.config
                .with_move(r, n, k)
                .is_ok_and(|next| ok(&next) && plan_with(&next, false).is_ok())
        })
    };
    // A lone robot cannot be caught half moved.
    cands.sort_by_key(|&(r, _)| ctx.config.count(r) > 1);
    let size = pool.len();
    let pool_after = |next: &Configuration| duel_pool(&a.meeting.axes, &next.weber_nodes());
    if let Some(&(r, n)) = cands
        .iter()
        .find(|&&(r, n)| safe(r, n, &|next| pool_after(next).len() < size))
    {
        return Ok(leading(r, n, None));
    }
    let neutral: Vec<(Node, Node)> = cands
        .iter()
        .copied()
        .filter(|&(r, n)| {
            pool.iter()
                .all(|&w| manhattan_distance(n, w) < manhattan_distance(r, w))
        })
        .collect();
    let then_shrinks = |next: &Configuration, at: Node| {
        let w = pool_after(next);
        at.neighbours().into_iter().any(|n2| {
            w.iter().any(|&x| manhattan_distance(n2, x) < manhattan_distance(at, x))
                && next.with_move(at, n2, 1).is_ok_and(|c| pool_after(&c).len() < w.len())
        })
    };
    let &(r, n) = neutral
        .iter()
        .find(|&&(r, n)| safe(r, n, &|next| then_shrinks(next, n)))
        .or_else(|| neutral.iter().find(|&&(r, n)| safe(r, n, &|_| true)))
        .ok_or_else(|| Error::Domain("no leading step makes progress".into()))?;
    Ok(leading(r, n, None))
}

/// The action of the robot that took `snapshot`.
pub fn decide(snapshot: &Snapshot) -> Result<Action> {
    Ok(plan(&snapshot.configuration)?.action(snapshot.position))
}

/// The Weber node the robots converge on.
pub fn select_target(config: &Configuration) -> Result<Node> {
    let p = plan(config)?;
    p.target
        .or_else(|| config.gathered_at())
        .ok_or_else(|| Error::Domain("no target while the symmetry is being broken".into()))
}

/// Positions whose robots hold still until the finalization.
pub fn select_guards(config: &Configuration) -> Result<BTreeSet<Node>> {
    Ok(plan(config)?.guards)
}

/// The leading robot and its next position.
pub fn select_leading_robot(config: &Configuration) -> Result<(Node, Node)> {
    designated(config, PhaseLabel::LeadingMove)
}

/// The robot that breaks the symmetry and its next position.
pub fn symmetry_break_action(config: &Configuration) -> Result<(Node, Node)> {
    designated(config, PhaseLabel::SymmetryBreak)
}

fn designated(config: &Configuration, phase: PhaseLabel) -> Result<(Node, Node)> {
    let p = plan(config)?;
    match (p.phase == phase, p.leader) {
        (true, Some(r)) => Ok((r, p.moves[&r])),
        _ => Err(Error::Domain(format!("no {phase} in this configuration ({})", p.phase))),
    }
}
