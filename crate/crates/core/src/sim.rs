//! Look-Compute-Move execution under the three schedulers.
//!
//! Robots carry an identifier for bookkeeping only; the decision function
//! never sees it. Under ASYNC a robot first takes a snapshot and computes a
//! destination, and the move happens at a later activation against
//! whatever the configuration has become by then.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algo::{plan, PhaseLabel, Plan};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::node::Node;
use crate::rect::compute_mer;
use crate::trace::{EventKind, Footer, Trace, TraceEvent};

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
pub const DEFAULT_FAIRNESS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchedulerKind {
    Fsync,
    Ssync,
    Async,
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchedulerKind::Fsync => "fsync",
            SchedulerKind::Ssync => "ssync",
            SchedulerKind::Async => "async",
        })
    }
}

impl FromStr for SchedulerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fsync" => Ok(SchedulerKind::Fsync),
            "ssync" => Ok(SchedulerKind::Ssync),
            "async" => Ok(SchedulerKind::Async),
            _ => Err(Error::Domain(format!("unknown scheduler {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchedulerPolicy {
    pub kind: SchedulerKind,
    /// Every robot completes a cycle within any window of this many steps.
    pub fairness: u32,
    pub seed: u64,
}

impl SchedulerPolicy {
    pub fn new(kind: SchedulerKind, seed: u64) -> Self {
        SchedulerPolicy {
            kind,
            fairness: DEFAULT_FAIRNESS,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_steps: u64,
    /// Check the invariants after every step.
    pub assertions: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_steps: DEFAULT_MAX_STEPS,
            assertions: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cycle {
    Idle,
    /// Computed a move from the snapshot taken at `looked_at`.
    Pending {
        destination: Node,
        looked_at: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobotState {
    pub id: usize,
    pub position: Node,
    pub cycle: Cycle,
    last_active: u64,
    last_complete: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Gathered { node: Node, total_moves: u64, steps: u64 },
    Ungatherable(String),
    CapExceeded { total_moves: u64, steps: u64 },
}

impl Outcome {
    pub fn footer(&self) -> Footer {
        match self {
            Outcome::Gathered {
                node,
                total_moves,
                steps,
            } => Footer {
                outcome: "gathered".into(),
                node: Some(*node),
                moves: *total_moves,
                steps: *steps,
            },
            Outcome::Ungatherable(_) => Footer {
                outcome: "ungatherable".into(),
                node: None,
                moves: 0,
                steps: 0,
            },
            Outcome::CapExceeded { total_moves, steps } => Footer {
                outcome: "cap_exceeded".into(),
                node: None,
                moves: *total_moves,
                steps: *steps,
            },
        }
    }
}

type CachedPlan = Rc<Result<Plan>>;

pub struct Simulation {
    initial: Configuration,
    config: Configuration,
    robots: Vec<RobotState>,
    policy: SchedulerPolicy,
    caps: Caps,
    rng: ChaCha8Rng,
    steps: u64,
    total_moves: u64,
    plans: HashMap<Configuration, CachedPlan>,
    events: Vec<TraceEvent>,
    outcome: Option<Outcome>,
}

/// A fresh simulation with every robot idle.
pub fn new_simulation(initial: Configuration, policy: SchedulerPolicy, caps: Caps) -> Result<Simulation> {
    initial.validate_initial()?;
    if policy.fairness < 2 {
        return Err(Error::Domain("the fairness bound must be at least 2".into()));
    }
    let robots = initial
        .robot_positions()
        .enumerate()
        .map(|(id, position)| RobotState {
            id,
            position,
            cycle: Cycle::Idle,
            last_active: 0,
            last_complete: 0,
        })
        .collect();
    Ok(Simulation {
        config: initial.clone(),
        initial,
        robots,
        policy,
        caps,
        rng: ChaCha8Rng::seed_from_u64(policy.seed),
        steps: 0,
        total_moves: 0,
        plans: HashMap::new(),
        events: Vec::new(),
        outcome: None,
    })
}

impl Simulation {
    pub fn configuration(&self) -> &Configuration {
        &self.config
    }

    pub fn initial(&self) -> &Configuration {
        &self.initial
    }

    pub fn robots(&self) -> &[RobotState] {
        &self.robots
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn total_moves(&self) -> u64 {
        self.total_moves
    }

    pub fn outcome(&self) -> Option<&Outcome> {
        self.outcome.as_ref()
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn trace(&self) -> Trace {
        Trace {
            events: self.events.clone(),
            footer: self.outcome.as_ref().map(Outcome::footer),
        }
    }

    fn plan_of(&mut self, c: &Configuration) -> CachedPlan {
        if let Some(p) = self.plans.get(c) {
            return p.clone();
        }
        let p = Rc::new(plan(c));
        self.plans.insert(c.clone(), p.clone());
        p
    }

    fn fault(&self, invariant: &'static str, detail: String) -> Error {
        Error::InvariantViolation {
            invariant,
            step: self.steps,
            detail,
        }
    }

    /// Robots activated this step.
    fn choose_active(&mut self) -> Vec<usize> {
        let n = self.robots.len();
        if self.policy.kind == SchedulerKind::Fsync {
            return (0..n).collect();
        }
        // A full ASYNC cycle takes two activations.
        let k = u64::from(self.policy.fairness);
        let window = if self.policy.kind == SchedulerKind::Async {
            (k / 2).max(1)
        } else {
            k
        };
        let mut active: Vec<usize> = (0..n)
            .filter(|&i| {
                let overdue = self.steps + 1 - self.robots[i].last_active >= window;
                let coin = self.rng.gen_bool(0.5);
                overdue || coin
            })
            .collect();
        if active.is_empty() {
            active.push(self.rng.gen_range(0..n));
        }
        active
    }

    /// One scheduler step. Returns the events it produced.
    pub fn step(&mut self) -> Result<Vec<TraceEvent>> {
        if self.outcome.is_some() {
            return Ok(Vec::new());
        }
        let before = self.config.clone();
        let plan_before = self.plan_of(&before);
        if self.steps == 0 {
            if let Err(Error::Ungatherable(reason)) = plan_before.as_ref() {
                self.outcome = Some(Outcome::Ungatherable(reason.clone()));
                return Ok(Vec::new());
            }
        }
        self.steps += 1;
        let step = self.steps;
        let active = self.choose_active();
        let mut events = Vec::new();
        let mut movers: Vec<(usize, Node)> = Vec::new();
        for &i in &active {
            self.robots[i].last_active = step;
            let r = &self.robots[i];
            match r.cycle {
                Cycle::Pending { destination, .. } => movers.push((i, destination)),
                Cycle::Idle => {
                    let action = match plan_before.as_ref() {
                        Ok(p) => p.action(r.position),
                        Err(Error::Ungatherable(reason)) => {
                            if self.caps.assertions {
                                return Err(self.fault("class-safety", reason.clone()));
                            }
                            self.outcome = Some(Outcome::Ungatherable(reason.clone()));
                            return Ok(events);
                        }
                        Err(e) => return Err(self.fault("decide", e.to_string())),
                    };
                    let (kind, to) = match action {
                        crate::algo::Action::Stay => (EventKind::Skip, r.position),
                        crate::algo::Action::Move(d) => (EventKind::Look, d),
                    };
                    events.push(TraceEvent {
                        step,
                        robot: i,
                        kind,
                        from: r.position,
                        to,
                        assertions: Vec::new(),
                    });
                    if kind == EventKind::Skip {
                        self.robots[i].last_complete = step;
                    } else {
                        self.robots[i].cycle = Cycle::Pending {
                            destination: to,
                            looked_at: step,
                        };
                        if self.policy.kind != SchedulerKind::Async {
                            movers.push((i, to));
                        }
                    }
                }
            }
        }
        for (i, to) in movers {
            let from = self.robots[i].position;
            if self.caps.assertions && !from.is_adjacent(to) {
                return Err(self.fault("adjacency", format!("robot {i} from {from} to {to}")));
            }
            if self.caps.assertions {
                if let Ok(p) = plan_before.as_ref() {
                    if p.phase != PhaseLabel::Finalization && p.guards.contains(&from) {
                        return Err(self.fault("guard-stationary", format!("robot {i} left guard node {from}")));
                    }
                }
            }
            let next = self.config.with_move(from, to, 1)?;
            if self.caps.assertions && next.min_consistency() + 1 != self.config.min_consistency() {
                return Err(self.fault(
                    "weber-step",
                    format!("robot {i} moved {from}->{to} away from every Weber node"),
                ));
            }
            self.config = next;
            self.total_moves += 1;
            let r = &mut self.robots[i];
            r.position = to;
            r.cycle = Cycle::Idle;
            r.last_complete = step;
            events.push(TraceEvent {
                step,
                robot: i,
                kind: EventKind::Move,
                from,
                to,
                assertions: Vec::new(),
            });
        }
        if self.caps.assertions {
            let checked = self.check_after(&before, &plan_before, &events)?;
            for e in &mut events {
                e.assertions = checked.clone();
            }
        }
        self.events.extend(events.iter().cloned());
        if let Some(node) = self.config.gathered_at() {
            self.outcome = Some(Outcome::Gathered {
                node,
                total_moves: self.total_moves,
                steps: self.steps,
            });
        } else if self.steps >= self.caps.max_steps {
            self.outcome = Some(Outcome::CapExceeded {
                total_moves: self.total_moves,
                steps: self.steps,
            });
        }
        Ok(events)
    }

    fn check_after(
        &mut self,
        before: &Configuration,
        plan_before: &CachedPlan,
        events: &[TraceEvent],
    ) -> Result<Vec<&'static str>> {
        let mut checked = vec!["adjacency", "guard-stationary", "weber-step"];
        let step = self.steps;
        let late = self
            .robots
            .iter()
            .find(|r| step - r.last_complete > u64::from(self.policy.fairness));
        if let Some(r) = late {
            return Err(self.fault(
                "fairness",
                format!("robot {} idle since step {}", r.id, r.last_complete),
            ));
        }
        checked.push("fairness");
        if self.config.gathered_at().is_some() || self.config == *before {
            return Ok(checked);
        }
        let after = self.config.clone();
        let plan_after = self.plan_of(&after);
        let (p0, p1) = match (plan_before.as_ref(), plan_after.as_ref()) {
            (Ok(p0), Ok(p1)) => (p0, p1),
            (_, Err(Error::Ungatherable(reason))) => {
                return Err(self.fault("class-safety", format!("reached an ungatherable class: {reason}")))
            }
            (_, Err(e)) => return Err(self.fault("decide", e.to_string())),
            (Err(e), _) => return Err(self.fault("decide", e.to_string())),
        };
        checked.push("class-safety");
        if let (Some(t0), Some(t1)) = (p0.target, p1.target) {
            if t0 != t1 {
                return Err(self.fault("target", format!("target moved from {t0} to {t1}")));
            }
        }
        checked.push("target");
        if let (PhaseLabel::LeadingMove, PhaseLabel::LeadingMove, Some(u), Some(u1)) =
            (p0.phase, p1.phase, p0.leader, p1.leader)
        {
            let moved_to = events
                .iter()
                .find(|e| e.kind == EventKind::Move && e.from == u)
                .map(|e| e.to);
            // A leading route is a single step, so once the leader has
            // moved a fresh designation is allowed.
            let ok = u1 == u || moved_to.is_some();
            if !ok {
                return Err(self.fault("leader", format!("leading robot jumped from {u} to {u1}")));
            }
        }
        checked.push("leader");
        if p0.phase != PhaseLabel::Finalization && !p0.guards.is_empty() && compute_mer(&after) != compute_mer(before) {
            return Err(self.fault("mer", "enclosing rectangle changed while guarded".into()));
        }
        checked.push("mer");
        Ok(checked)
    }

    /// Runs to termination.
    pub fn run(&mut self) -> Result<Outcome> {
        while self.outcome.is_none() {
            self.step()?;
        }
        Ok(self.outcome.clone().expect("terminated"))
    }
}

/// Convenience: simulate `initial` to the end.
pub fn run(initial: &Configuration, policy: SchedulerPolicy, caps: Caps) -> Result<(Outcome, Trace)> {
    let mut sim = new_simulation(initial.clone(), policy, caps)?;
    let outcome = sim.run()?;
    Ok((outcome, sim.trace()))
}
