//! Combinatorics of stack and queue diagrams on a line.

// Degree tables are indexed by vertex, and the loops read like the
// conditions they check.
#![allow(clippy::needless_range_loop)]

pub mod asympt;
pub mod contactmap;
pub mod decompose;
pub mod diagram;
pub mod enumerate;
pub mod fixed;
pub mod holonomic;
pub mod poly;
pub mod reduction;
pub mod series;
