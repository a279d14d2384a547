//! Optimal gathering of oblivious robots over meeting nodes of the
//! infinite grid.

pub mod algo;
pub mod canon;
pub mod classify;
pub mod config;
pub mod error;
pub mod frame;
pub mod gen;
pub mod node;
pub mod oracle;
pub mod rect;
pub mod scenario;
pub mod sim;
pub mod symmetry;
pub mod trace;

pub use algo::{decide, plan, select_target, Action, PhaseLabel, Plan, Snapshot};
pub use classify::{classify, Analysis, ClassLabel, Major, Minor};
pub use config::{Configuration, MIN_ROBOTS};
pub use error::{Error, Result};
pub use node::{manhattan_distance, Isometry, Node};
pub use rect::{compute_mer, corner_string, Corner, CornerString, Lines, Rectangle};
