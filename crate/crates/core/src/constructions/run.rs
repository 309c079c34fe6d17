//! Running a construction by name, as the command line and the C interface do.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::*;
use crate::colouring::Kind;
use crate::invariants::{self, Limits};

/// The constructions that can be run by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Edge colouring from a distinguishing vertex colouring.
    EdgeFromVertex,
    /// Proper distinguishing colouring with at most 2Δ−1 colours.
    #[value(name = "2d1")]
    TwoDeltaMinusOne,
    /// Proper distinguishing colouring of a tree with at most Δ+1 colours.
    TreeDplus1,
    /// Three colours on a truncated tree without interior leaves.
    Tree3,
    /// Δ colours on a truncated tree.
    TreeDelta,
    /// Four colours on a truncated subcubic graph without interior leaves.
    Subcubic4,
    /// Pins a proper total colouring with one fresh colour.
    TotalPin,
    /// Pins a proper edge colouring along the geodesic ray.
    EdgePinRay,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::EdgeFromVertex,
        Algorithm::TwoDeltaMinusOne,
        Algorithm::TreeDplus1,
        Algorithm::Tree3,
        Algorithm::TreeDelta,
        Algorithm::Subcubic4,
        Algorithm::TotalPin,
        Algorithm::EdgePinRay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EdgeFromVertex => "edge-from-vertex",
            Algorithm::TwoDeltaMinusOne => "2d1",
            Algorithm::TreeDplus1 => "tree-dplus1",
            Algorithm::Tree3 => "tree3",
            Algorithm::TreeDelta => "tree-delta",
            Algorithm::Subcubic4 => "subcubic4",
            Algorithm::TotalPin => "total-pin",
            Algorithm::EdgePinRay => "edge-pin-ray",
        }
    }

    /// Whether the construction transforms an input colouring.
    pub fn takes_input(self) -> bool {
        matches!(self, Algorithm::EdgeFromVertex | Algorithm::TotalPin | Algorithm::EdgePinRay)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::Parse(format!("unknown algorithm '{s}' (known: {})", known.join(", ")))
        })
    }
}

fn require_truncation(instance: &Instance, alg: Algorithm) -> Result<&Truncation> {
    instance.truncation().ok_or_else(|| {
        Error::Precondition(format!("{alg} runs on truncations; use a truncated family or truncation JSON"))
    })
}

/// Runs `alg` on `instance` and returns the certified colouring with its
/// audit record. Constructions that transform a colouring use `input` when
/// given, and otherwise start from:
///
/// - edge-from-vertex: an optimal distinguishing vertex colouring (finite
///   graphs), or the output of tree-dplus1 or 2d1 (truncations)
/// - total-pin: an optimal proper total colouring
/// - edge-pin-ray: the greedy BFS edge colouring
pub fn run(alg: Algorithm, instance: &Instance, input: Option<Colouring>, limits: &Limits) -> Result<(Colouring, Value)> {
    let target = Target::from(instance);
    let g = instance.graph();
    Ok(match alg {
        Algorithm::EdgeFromVertex => {
            let vc = match input {
                Some(c) => c,
                None => match instance {
                    Instance::Finite(g) => invariants::distinguishing_value(g, Kind::Vertex, false, limits)?.certificate,
                    Instance::Truncated(t) if t.graph().is_tree() => tree_dplus1(t)?.0,
                    Instance::Truncated(t) => proper_dist_2d1(t)?.0,
                },
            };
            let (c, case) = edge_from_vertex_colouring(target, &vc)?;
            (c, json!({ "input": vc, "case": case }))
        }
        Algorithm::TwoDeltaMinusOne => {
            let (c, a) = proper_dist_2d1(target)?;
            (c, serde_json::to_value(a)?)
        }
        Algorithm::TreeDplus1 => {
            let (c, a) = tree_dplus1(target)?;
            (c, serde_json::to_value(a)?)
        }
        Algorithm::Tree3 => {
            let (c, s) = tree_infmotion_3(require_truncation(instance, alg)?)?;
            (c, serde_json::to_value(s)?)
        }
        Algorithm::TreeDelta => {
            let (c, a) = tree_delta(require_truncation(instance, alg)?)?;
            (c, serde_json::to_value(a)?)
        }
        Algorithm::Subcubic4 => {
            let (c, p) = subcubic_infmotion_4(require_truncation(instance, alg)?)?;
            (c, serde_json::to_value(p)?)
        }
        Algorithm::TotalPin => {
            let tc = match input {
                Some(c) => c,
                None => invariants::proper_chromatic(g, Kind::Total, limits)?.certificate,
            };
            let (c, a) = total_dist_pin(target, &tc)?;
            (c, json!({ "input": tc, "pin": a }))
        }
        Algorithm::EdgePinRay => {
            let t = require_truncation(instance, alg)?;
            let ec = match input {
                Some(c) => c,
                None => greedy_edge_colouring(t.graph(), t.root())?,
            };
            let (c, a) = edge_dist_pin_ray(t, &ec)?;
            (c, json!({ "input": ec, "pin": a }))
        }
    })
}
