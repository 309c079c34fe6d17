//! Distinguishing edge colourings from distinguishing vertex colourings.

use std::collections::VecDeque;

use serde::Serialize;

use super::{certify, Target};
use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which case of the construction produced the colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum EdgeCase {
    /// Finite tree with a central vertex.
    CentralVertex { centre: usize },
    /// Finite tree with a central edge. `extra` is the edge given the extra
    /// colour, when the central edge could still be flipped without it.
    CentralEdge { edge: [usize; 2], extra: Option<usize> },
    /// Truncated tree: the ray from the root carries the extra colour.
    Ray { ray: Vec<usize> },
    /// Graph with a cycle, stabilised through a shortest cycle listed in
    /// walking order.
    Cycle { cycle: Vec<usize> },
    /// A one-colour distinguishing vertex colouring: the graph is rigid and
    /// every edge gets that colour.
    Rigid,
}

/// Builds a distinguishing edge colouring with at most one colour more than
/// the distinguishing vertex colouring `vc`.
pub fn edge_from_vertex_colouring<'a>(target: impl Into<Target<'a>>, vc: &Colouring) -> Result<(Colouring, EdgeCase)> {
    let target = target.into();
    let g = target.graph();
    if vc.kind != Kind::Vertex {
        return Err(Error::InvalidColouring(format!("expected a vertex colouring, got a {} colouring", vc.kind)));
    }
    vc.check_domain(g)?;
    g.require_connected()?;
    if g.n() < 3 {
        return Err(Error::Precondition("the graph needs at least three vertices".into()));
    }
    if !target.verdict(vc)?.is_distinguishing() {
        return Err(Error::Precondition("the vertex colouring is not distinguishing".into()));
    }
    let hat = vc.vertex_colours();
    let palette: Vec<Colour> = vc.palette().into_iter().collect();
    let extra = palette.last().copied().unwrap_or(0) + 1;
    let least = palette[0];
    let mut c = vec![0 as Colour; g.m()];

    // Colours every edge by the colour of its endpoint farther from a source
    // set; edges within one distance class get `least`.
    let by_distance = |c: &mut Vec<Colour>, dist: &[u32]| {
        for (e, (x, y)) in g.edges().enumerate() {
            c[e] = match dist[x].cmp(&dist[y]) {
                std::cmp::Ordering::Greater => hat[x],
                std::cmp::Ordering::Less => hat[y],
                std::cmp::Ordering::Equal => least,
            };
        }
    };

    let case = match target {
        Target::Finite(_) if g.is_tree() => match tree_centre(g) {
            Centre::Vertex(v0) => {
                by_distance(&mut c, &g.distances_from(v0));
                EdgeCase::CentralVertex { centre: v0 }
            }
            Centre::Edge(a1, a2) => {
                let d1 = g.distances_from(a1);
                let d2 = g.distances_from(a2);
                let dist: Vec<u32> = d1.iter().zip(&d2).map(|(&x, &y)| x.min(y)).collect();
                by_distance(&mut c, &dist);
                let e0 = g.edge_id(a1, a2).expect("central edge");
                c[e0] = least;
                let mut extra_edge = None;
                let probe = Colouring::edge(c.clone());
                if let Some(phi) = target.verdict(&probe)?.witness() {
                    let images = phi.on_edges(g);
                    let e = (0..g.m())
                        .find(|&e| e != e0 && images[e] != e)
                        .expect("a non-identity automorphism moves an edge other than the central one");
                    c[e] = extra;
                    extra_edge = Some(e);
                }
                EdgeCase::CentralEdge { edge: [a1, a2], extra: extra_edge }
            }
        },
        Target::Truncated(t) if g.is_tree() => {
            by_distance(&mut c, t.depths());
            let ray = t.root_ray();
            for w in ray.windows(2) {
                c[g.edge_id(w[0], w[1]).expect("ray edge")] = extra;
            }
            EdgeCase::Ray { ray }
        }
        _ if palette.len() == 1 => {
            c.fill(least);
            EdgeCase::Rigid
        }
        _ => {
            let cycle = shortest_cycle(g).expect("a connected non-tree has a cycle");
            let mut dist = vec![u32::MAX; g.n()];
            let mut queue = VecDeque::new();
            for &v in &cycle {
                dist[v] = 0;
                queue.push_back(v);
            }
            while let Some(u) = queue.pop_front() {
                for w in g.neighbours(u) {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            by_distance(&mut c, &dist);
            let k = cycle.len();
            for i in 0..k {
                c[g.edge_id(cycle[i], cycle[(i + 1) % k]).expect("cycle edge")] = extra;
            }
            c[g.edge_id(cycle[0], cycle[1]).expect("cycle edge")] = palette[0];
            c[g.edge_id(cycle[0], cycle[k - 1]).expect("cycle edge")] = palette[1];
            EdgeCase::Cycle { cycle }
        }
    };
    let out = Colouring::edge(c);
    certify(target, &out, false, palette.len() + 1, "edge_from_vertex_colouring")?;
    Ok((out, case))
}

enum Centre {
    Vertex(usize),
    Edge(usize, usize),
}

/// Centre of a finite tree by repeatedly stripping leaves.
fn tree_centre(g: &Graph) -> Centre {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            left -= 1;
            for w in g.neighbours(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    match rest[..] {
        [v] => Centre::Vertex(v),
        [a, b] => Centre::Edge(a, b),
        _ => unreachable!("a tree has one or two central vertices"),
    }
}

/// A shortest cycle, in walking order from its least vertex towards the
/// smaller of that vertex's two cycle neighbours. Among the cycles found by
/// a BFS around each edge, the one with the lexicographically least vertex
/// set wins ties.
pub(crate) fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![u32::MAX; n];
    let mut touched = Vec::new();
    for (u, v) in g.edges() {
        let limit = best.as_ref().map_or(usize::MAX, |b| b.0);
        // BFS from u to v without the edge uv.
        for &t in &touched {
            dist[t] = u32::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        dist[u] = 0;
        touched.push(u);
        let mut queue = VecDeque::from([u]);
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            if dist[x] as usize + 2 > limit {
                break;
            }
            for y in g.neighbours(x) {
                if (x == u && y == v) || dist[y] != u32::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                parent[y] = x;
                touched.push(y);
                if y == v {
                    found = true;
                    break;
                }
                queue.push_back(y);
            }
            if found {
                break;
            }
        }
        if !found {
            continue;
        }
        let mut cycle = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            cycle.push(x);
        }
        let len = cycle.len();
        let mut key = cycle.clone();
        key.sort_unstable();
        if best.as_ref().is_none_or(|b| (len, &key) < (b.0, &b.1)) {
            best = Some((len, key, cycle));
        }
    }
    let (_, _, cycle) = best?;
    // Rotate to start at the least vertex, heading to its smaller neighbour.
    let k = cycle.len();
    let i = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty");
    let mut walk: Vec<usize> = (0..k).map(|j| cycle[(i + j) % k]).collect();
    if walk[k - 1] < walk[1] {
        walk[1..].reverse();
    }
    Some(walk)
}
