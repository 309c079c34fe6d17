//! Distinguishing colourings of graphs: exact invariants of small graphs,
//! constructive colourings of finite graphs and of balls in infinite locally
//! finite graphs, and certification of the results.

pub mod atlas;
pub mod automorphisms;
pub mod cli;
pub mod colouring;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod experiment;
pub mod families;
pub mod graph;
pub mod invariants;
pub mod source;
pub mod truncation;

#[cfg(test)]
mod testutil;

pub use colouring::{Colour, Colouring, Kind};
pub use error::{Error, Result};
pub use graph::Graph;
pub use truncation::Truncation;
