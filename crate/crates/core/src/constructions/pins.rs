//! Pinning proper total and edge colourings with one fresh colour.

use serde::Serialize;

use super::{certify, Target};
use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::truncation::Truncation;

/// Elements recoloured with the fresh colour: vertex ids for total
/// colourings, edge ids for edge colourings. Empty when the input was
/// already distinguishing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinAudit {
    pub pinned: Vec<usize>,
    pub fresh: Option<Colour>,
}

fn require_kind(c: &Colouring, kind: Kind) -> Result<()> {
    if c.kind != kind {
        return Err(Error::InvalidColouring(format!("expected a {kind} colouring, got a {} colouring", c.kind)));
    }
    Ok(())
}

fn require_proper(g: &Graph, c: &Colouring) -> Result<()> {
    c.check_domain(g)?;
    match c.first_conflict(g) {
        None => Ok(()),
        Some(conflict) => Err(Error::Precondition(format!("the input colouring is not proper: {conflict}"))),
    }
}

/// Makes a proper total colouring distinguishing by giving vertex 0 a fresh
/// colour, unless it already is distinguishing.
pub fn total_dist_pin<'a>(target: impl Into<Target<'a>>, tc: &Colouring) -> Result<(Colouring, PinAudit)> {
    let target = target.into();
    let g = target.graph();
    require_kind(tc, Kind::Total)?;
    require_proper(g, tc)?;
    let bound = tc.num_colours() + 1;
    if target.verdict(tc)?.is_distinguishing() {
        return Ok((tc.clone(), PinAudit { pinned: Vec::new(), fresh: None }));
    }
    let fresh = tc.max_colour().unwrap_or(0) + 1;
    let mut out = tc.clone();
    out.vertex_colours.as_mut().expect("total colouring")[0] = fresh;
    out.reserved = Some(fresh);
    certify(target, &out, true, bound, "total_dist_pin")?;
    Ok((out, PinAudit { pinned: vec![0], fresh: Some(fresh) }))
}

/// Positions (1-based) of the ray edges that receive the fresh colour.
pub const PINNED_RAY_EDGES: [usize; 3] = [1, 3, 6];

/// Makes a proper edge colouring of a truncation distinguishing by giving
/// the first, third and sixth edges of the geodesic ray a fresh colour.
pub fn edge_dist_pin_ray(t: &Truncation, ec: &Colouring) -> Result<(Colouring, PinAudit)> {
    let g = t.graph();
    require_kind(ec, Kind::Edge)?;
    require_proper(g, ec)?;
    let ray = t.geodesic_ray()?;
    let fresh = ec.max_colour().unwrap_or(0) + 1;
    let mut out = ec.clone();
    let colours = out.edge_colours.as_mut().expect("edge colouring");
    let mut pinned = Vec::new();
    for i in PINNED_RAY_EDGES {
        let e = g.edge_id(ray[i - 1], ray[i]).expect("ray edge");
        colours[e] = fresh;
        pinned.push(e);
    }
    out.reserved = Some(fresh);
    certify(Target::Truncated(t), &out, true, ec.num_colours() + 1, "edge_dist_pin_ray")?;
    Ok((out, PinAudit { pinned, fresh: Some(fresh) }))
}

/// Proper edge colouring taking edges in BFS order from `root` (by the depth
/// of the nearer endpoint, then by endpoints) and giving each the least
/// colour free at both ends. Trees get Δ colours.
pub fn greedy_edge_colouring(g: &Graph, root: usize) -> Result<Colouring> {
    g.require_connected()?;
    let depth = g.distances_from(root);
    let mut edges: Vec<(u32, usize, usize, usize)> = g
        .edges()
        .enumerate()
        .map(|(e, (u, v))| (depth[u].min(depth[v]), u, v, e))
        .collect();
    edges.sort_unstable();
    let mut c = vec![0 as Colour; g.m()];
    for (_, u, v, e) in edges {
        let used: Vec<Colour> = g.incident_edges(u).chain(g.incident_edges(v)).map(|f| c[f]).collect();
        c[e] = (1..).find(|x| !used.contains(x)).expect("colours are unbounded");
    }
    Ok(Colouring::edge(c))
}
