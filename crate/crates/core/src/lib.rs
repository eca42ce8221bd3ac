//! Sections of configuration-space projections, fixed-point certificates,
//! bounds on sectional category and topological complexity, and
//! region-based motion planners for the `(k, r)` robot problem.

pub mod error;
pub mod finite;
pub mod bounds;
pub mod certificates;
pub mod cli;
pub mod geometry;
pub mod planner;
pub mod sections;
pub mod selfmaps;

pub use error::{Error, Result};
