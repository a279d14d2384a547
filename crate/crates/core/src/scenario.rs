//! Scenario files.
//!
//! ```text
//! # comment
//! M 0 0
//! R 3 4
//! R 3 4   (a repeated line stacks a multiplicity)
//! ```

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::node::Node;

/// Parses a scenario. Line numbers in errors are 1-based.
pub fn parse(text: &str) -> Result<Configuration> {
    let mut meeting = Vec::new();
    let mut robots = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let mut toks = line.split_whitespace();
        let tag = toks.next().expect("non-empty line");
        let mut coord = |name: &str| -> Result<i64> {
            let t = toks.next().ok_or_else(|| err(format!("missing {name} coordinate")))?;
            t.parse().map_err(|_| err(format!("bad {name} coordinate {t:?}")))
        };
        let node = Node::new(coord("x")?, coord("y")?);
        if let Some(extra) = toks.next() {
            return Err(err(format!("unexpected trailing token {extra:?}")));
        }
        match tag {
            "M" => {
                if meeting.contains(&node) {
                    return Err(err(format!("duplicate meeting node {node}")));
                }
                meeting.push(node);
            }
            "R" => robots.push(node),
            other => return Err(err(format!("unknown record {other:?}, expected M or R"))),
        }
    }
    Configuration::new(meeting, robots)
}

/// Renders a scenario that [`parse`] reads back to the same configuration.
pub fn render(config: &Configuration) -> String {
    let mut out = String::new();
    for m in config.meeting_nodes() {
        out.push_str(&format!("M {} {}\n", m.x, m.y));
    }
    for (v, &c) in config.robots() {
        for _ in 0..c {
            out.push_str(&format!("R {} {}\n", v.x, v.y));
        }
    }
    out
}
