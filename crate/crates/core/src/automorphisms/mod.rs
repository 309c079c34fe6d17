//! Automorphism groups, distinguishing checks and motion.

mod partition;
mod search;

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::truncation::Truncation;
use partition::Adjacency;
pub(crate) use search::SearchOptions;

/// A vertex bijection given by its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    pub image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    /// Vertices moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.image[v] != v).collect()
    }

    /// `self` after `other`: v ↦ self(other(v)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&w| self.image[w]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { image: inv }
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.image.iter().all(|&w| w < seen.len() && !std::mem::replace(&mut seen[w], true))
    }

    /// Whether the permutation maps edges to edges (and so non-edges to
    /// non-edges, the graph being finite).
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.len() == g.n()
            && self.is_bijection()
            && g.edges().all(|(u, v)| g.adjacent(self.image[u], self.image[v]))
    }

    /// Whether the automorphism preserves every colour of `c`.
    pub fn preserves(&self, g: &Graph, c: &Colouring) -> bool {
        let vc = c.vertex_colours();
        if c.kind.has_vertices() && (0..g.n()).any(|v| vc[v] != vc[self.image[v]]) {
            return false;
        }
        if c.kind.has_edges() {
            let ec = c.edge_colours();
            for (e, (u, v)) in g.edges().enumerate() {
                match g.edge_id(self.image[u], self.image[v]) {
                    Some(f) if ec[f] == ec[e] => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// The induced permutation of edge ids.
    pub fn on_edges(&self, g: &Graph) -> Vec<usize> {
        g.edges()
            .map(|(u, v)| {
                g.edge_id(self.image[u], self.image[v])
                    .expect("permutation is an automorphism")
            })
            .collect()
    }
}

/// Generators, order and orbits of a (colour-constrained) automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    pub generators: Vec<Permutation>,
    #[serde(serialize_with = "serialize_biguint")]
    pub order: BigUint,
    pub orbits: Vec<Vec<usize>>,
}

fn serialize_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl AutGroup {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }
}

/// Outcome of a distinguishing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Distinguishing,
    /// A non-identity automorphism preserving the colouring.
    Preserved { witness: Permutation },
}

impl Verdict {
    pub fn is_distinguishing(&self) -> bool {
        matches!(self, Verdict::Distinguishing)
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match self {
            Verdict::Distinguishing => None,
            Verdict::Preserved { witness } => Some(witness),
        }
    }
}

/// How automorphisms of a truncation must treat its boundary sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryMode {
    /// Only automorphisms fixing every boundary vertex are considered.
    Pointwise,
    /// Automorphisms mapping the boundary onto itself are considered.
    Setwise,
}

/// Minimum number of vertices moved by a non-identity automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Motion {
    Rigid,
    Moves(usize),
}

/// A graph with a vertex colouring, in the form the search consumes. Edge and
/// total colourings are encoded on the subdivision graph, whose first `n`
/// vertices are the original ones and whose vertex `n + e` stands for edge e.
pub(crate) struct Structure<'a> {
    owned: Option<(Vec<u32>, Vec<u32>)>,
    graph: &'a Graph,
    pub keys: Vec<u32>,
}

/// Per-element colour key: `(class, a, b)` tuples ranked densely.
fn rank_keys(raw: &[(u32, u64, u64)]) -> Vec<u32> {
    let mut sorted: Vec<(u32, u64, u64)> = raw.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    raw.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn subdivision(g: &Graph) -> (Vec<u32>, Vec<u32>) {
    let (n, m) = (g.n(), g.m());
    let mut offsets = Vec::with_capacity(n + m + 1);
    let mut nbrs = Vec::with_capacity(4 * m);
    offsets.push(0u32);
    for v in 0..n {
        nbrs.extend(g.incident_edges(v).map(|e| (n + e) as u32));
        offsets.push(nbrs.len() as u32);
    }
    for (u, v) in g.edges() {
        nbrs.push(u as u32);
        nbrs.push(v as u32);
        offsets.push(nbrs.len() as u32);
    }
    (offsets, nbrs)
}

impl<'a> Structure<'a> {
    /// `extra(v)` adds a per-vertex component to the key of original vertices.
    pub fn new(g: &'a Graph, c: Option<&Colouring>, extra: &dyn Fn(usize) -> u64) -> Structure<'a> {
        let kind = c.map_or(Kind::Vertex, |c| c.kind);
        let vc = c.map(|c| c.vertex_colours()).unwrap_or(&[]);
        let mut raw: Vec<(u32, u64, u64)> = (0..g.n())
            .map(|v| (0, vc.get(v).map_or(0, |&x| x as u64), extra(v)))
            .collect();
        let owned = if kind.has_edges() {
            let ec = c.map(|c| c.edge_colours()).unwrap_or(&[]);
            raw.extend((0..g.m()).map(|e| (1, ec[e] as u64, 0)));
            Some(subdivision(g))
        } else {
            None
        };
        Structure {
            owned,
            graph: g,
            keys: rank_keys(&raw),
        }
    }

    fn adjacency(&self) -> Adjacency<'_> {
        match &self.owned {
            Some((offsets, nbrs)) => Adjacency { offsets, nbrs },
            None => {
                let (offsets, nbrs) = self.graph.csr();
                Adjacency { offsets, nbrs }
            }
        }
    }

    pub fn search(&self, opts: SearchOptions) -> Result<search::SearchOutcome> {
        search::search(self.adjacency(), &self.keys, opts)
    }

    /// The first non-identity automorphism in search order, restricted to the
    /// original vertices.
    pub fn first_automorphism(&self, deadline: Option<Instant>) -> Result<Option<Permutation>> {
        let out = self.search(SearchOptions {
            prune: true,
            first_only: true,
            deadline,
        })?;
        Ok(out.generators.into_iter().next().map(|p| Permutation {
            image: p[..self.graph.n()].iter().map(|&w| w as usize).collect(),
        }))
    }
}

fn group_from_outcome(n: usize, out: search::SearchOutcome) -> AutGroup {
    let generators = out
        .generators
        .into_iter()
        .map(|p| Permutation {
            image: p[..n].iter().map(|&w| w as usize).collect(),
        })
        .collect();
    let mut classes: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for v in 0..n {
        classes.entry(out.orbit_rep[v]).or_default().push(v);
    }
    AutGroup {
        generators,
        order: out.order,
        orbits: classes.into_values().collect(),
    }
}

/// The automorphism group, optionally restricted to automorphisms preserving
/// each class of a vertex colour map.
pub fn aut_group(g: &Graph, fixed_colours: Option<&[Colour]>) -> AutGroup {
    aut_group_with(g, fixed_colours, true)
}

/// As [`aut_group`], with orbit pruning switchable for cross-checking.
pub fn aut_group_with(g: &Graph, fixed_colours: Option<&[Colour]>, prune: bool) -> AutGroup {
    let extra = |v: usize| fixed_colours.map_or(0, |c| c[v] as u64);
    let s = Structure::new(g, None, &extra);
    let out = s
        .search(SearchOptions {
            prune,
            first_only: false,
            deadline: None,
        })
        .expect("no deadline set");
    group_from_outcome(g.n(), out)
}

/// The group of automorphisms preserving a colouring of any kind.
pub fn colour_preserving_group(g: &Graph, c: &Colouring) -> Result<AutGroup> {
    c.check_domain(g)?;
    let s = Structure::new(g, Some(c), &|_| 0);
    Ok(group_from_outcome(g.n(), s.search(SearchOptions::default())?))
}

/// Whether only the identity preserves `c`; otherwise a preserving
/// automorphism.
pub fn is_distinguishing(g: &Graph, c: &Colouring) -> Result<Verdict> {
    c.check_domain(g)?;
    let s = Structure::new(g, Some(c), &|_| 0);
    Ok(match s.first_automorphism(None)? {
        None => Verdict::Distinguishing,
        Some(witness) => Verdict::Preserved { witness },
    })
}

/// Distinguishing check on a truncation under a boundary mode.
pub fn truncation_distinguishing(t: &Truncation, c: &Colouring, mode: BoundaryMode) -> Result<Verdict> {
    let g = t.graph();
    c.check_domain(g)?;
    let extra = |v: usize| -> u64 {
        match mode {
            BoundaryMode::Pointwise if t.is_boundary(v) => (1u64 << 32) | v as u64,
            BoundaryMode::Setwise if t.is_boundary(v) => 1,
            _ => 0,
        }
    };
    let s = Structure::new(g, Some(c), &extra);
    Ok(match s.first_automorphism(None)? {
        None => Verdict::Distinguishing,
        Some(witness) => Verdict::Preserved { witness },
    })
}

/// All elements of the group generated by `generators`, or `None` once more
/// than `limit` elements appear.
pub fn enumerate_group(n: usize, generators: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in generators {
            let q = s.compose(&p);
            if seen.insert(q.clone()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out.sort();
    Some(out)
}

/// Largest group enumerated element by element when computing motion.
pub const MOTION_ENUMERATION_LIMIT: usize = 1_000_000;

/// Motion of a finite graph.
pub fn motion(g: &Graph) -> Result<Motion> {
    let group = aut_group(g, None);
    if group.is_trivial() {
        return Ok(Motion::Rigid);
    }
    // Twins give transpositions, the smallest possible support.
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let nu: Vec<usize> = g.neighbours(u).filter(|&w| w != v).collect();
            let nv: Vec<usize> = g.neighbours(v).filter(|&w| w != u).collect();
            if nu == nv {
                return Ok(Motion::Moves(2));
            }
        }
    }
    let elements = enumerate_group(g.n(), &group.generators, MOTION_ENUMERATION_LIMIT)
        .ok_or_else(|| Error::SizeBound(format!("automorphism group of order {}", group.order)))?;
    Ok(Motion::Moves(
        elements
            .iter()
            .map(|p| p.support().len())
            .filter(|&s| s > 0)
            .min()
            .expect("group is non-trivial"),
    ))
}

#[cfg(test)]
mod tests;
