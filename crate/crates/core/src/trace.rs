//! Line-oriented trace format.
//!
//! ```text
//! step=3 r=0 ev=move from=1,2 to=2,2
//! outcome=gathered node=4,2 moves=17 steps=9
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::node::Node;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// Snapshot taken, a move was computed.
    Look,
    /// A computed move was executed.
    Move,
    /// Snapshot taken, the robot decided to stay.
    Skip,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::Look => "look",
            EventKind::Move => "move",
            EventKind::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: u64,
    pub robot: usize,
    pub kind: EventKind,
    pub from: Node,
    pub to: Node,
    /// Invariants checked after this event was applied. Not rendered.
    pub assertions: Vec<&'static str>,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step={} r={} ev={} from={},{} to={},{}",
            self.step, self.robot, self.kind, self.from.x, self.from.y, self.to.x, self.to.y
        )
    }
}

/// Final line of a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Footer {
    /// `gathered`, `ungatherable` or `cap_exceeded`.
    pub outcome: String,
    pub node: Option<Node>,
    pub moves: u64,
    pub steps: u64,
}

impl fmt::Display for Footer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "outcome={}", self.outcome)?;
        if let Some(n) = self.node {
            write!(f, " node={},{}", n.x, n.y)?;
        }
        write!(f, " moves={} steps={}", self.moves, self.steps)
    }
}

/// A whole trace: events then an optional footer.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub footer: Option<Footer>,
}

impl Trace {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        if let Some(f) = &self.footer {
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a rendered trace. Blank lines are ignored; the footer must be
    /// last.
    pub fn parse(text: &str) -> Result<Trace> {
        let mut trace = Trace::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            if trace.footer.is_some() {
                return Err(err("content after the footer".into()));
            }
            if line.starts_with("outcome=") {
                trace.footer = Some(parse_footer(line).map_err(err)?);
            } else {
                trace.events.push(parse_event(line).map_err(err)?);
            }
        }
        Ok(trace)
    }
}

fn fields(line: &str) -> std::result::Result<Vec<(&str, &str)>, String> {
    line.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| format!("expected key=value, got {tok:?}"))
        })
        .collect()
}

fn expect<'a>(fs: &[(&'a str, &'a str)], i: usize, key: &str) -> std::result::Result<&'a str, String> {
    match fs.get(i) {
        Some(&(k, v)) if k == key => Ok(v),
        Some(&(k, _)) => Err(format!("expected field {key}, got {k}")),
        None => Err(format!("missing field {key}")),
    }
}

fn number<T: FromStr>(v: &str, key: &str) -> std::result::Result<T, String> {
    v.parse().map_err(|_| format!("bad {key} value {v:?}"))
}

fn node(v: &str, key: &str) -> std::result::Result<Node, String> {
    let (x, y) = v.split_once(',').ok_or_else(|| format!("bad {key} node {v:?}"))?;
    Ok(Node::new(number(x, key)?, number(y, key)?))
}

fn parse_event(line: &str) -> std::result::Result<TraceEvent, String> {
    let fs = fields(line)?;
    if fs.len() != 5 {
        return Err(format!("expected 5 fields, got {}", fs.len()));
    }
    let kind = match expect(&fs, 2, "ev")? {
        "look" => EventKind::Look,
        "move" => EventKind::Move,
        "skip" => EventKind::Skip,
        other => return Err(format!("unknown event {other:?}")),
    };
    Ok(TraceEvent {
        step: number(expect(&fs, 0, "step")?, "step")?,
        robot: number(expect(&fs, 1, "r")?, "r")?,
        kind,
        from: node(expect(&fs, 3, "from")?, "from")?,
        to: node(expect(&fs, 4, "to")?, "to")?,
        assertions: Vec::new(),
    })
}

fn parse_footer(line: &str) -> std::result::Result<Footer, String> {
    let fs = fields(line)?;
    let outcome = expect(&fs, 0, "outcome")?.to_string();
    if outcome.is_empty() {
        return Err("empty outcome".into());
    }
    let (node_at, rest) = match fs.get(1) {
        Some(&("node", v)) => (Some(node(v, "node")?), 2),
        _ => (None, 1),
    };
    if fs.len() != rest + 2 {
        return Err("footer needs moves and steps".into());
    }
    Ok(Footer {
        outcome,
        node: node_at,
        moves: number(expect(&fs, rest, "moves")?, "moves")?,
        steps: number(expect(&fs, rest + 1, "steps")?, "steps")?,
    })
}
