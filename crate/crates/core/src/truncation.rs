//! Finite balls around a root, standing in for infinite locally finite graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};

/// The ball of radius `radius` around `root`, with its depth map.
///
/// The boundary is the sphere of vertices at depth exactly `radius`. It is
/// never empty, since the radius must equal the eccentricity of the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    graph: Graph,
    root: usize,
    radius: u32,
    depth: Vec<u32>,
}

impl Truncation {
    pub fn new(graph: Graph, root: usize, radius: u32) -> Result<Truncation> {
        if root >= graph.n() {
            return Err(Error::InvalidVertex { vertex: root, n: graph.n() });
        }
        if radius == 0 {
            return Err(Error::InvalidTruncation("radius must be at least 1".into()));
        }
        let depth = graph.distances_from(root);
        if let Some(v) = depth.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected { unreached: v });
        }
        let ecc = depth.iter().copied().max().unwrap_or(0);
        if ecc != radius {
            return Err(Error::InvalidTruncation(format!(
                "radius {radius} differs from the root eccentricity {ecc}"
            )));
        }
        Ok(Truncation {
            graph,
            root,
            radius,
            depth,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.depth[v] == self.radius
    }

    /// Boundary vertices in increasing order.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_boundary(v)).collect()
    }

    /// Neighbours of `v` one level further from the root, ascending.
    pub fn down_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let d = self.depth[v];
        self.graph
            .neighbours(v)
            .filter(move |&w| self.depth[w] == d + 1)
    }

    /// Neighbours of `v` one level closer to the root, ascending.
    pub fn up_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let d = self.depth[v];
        self.graph
            .neighbours(v)
            .filter(move |&w| self.depth[w] + 1 == d)
    }

    /// Spheres S_0..S_r, each in increasing vertex order.
    pub fn spheres(&self) -> Vec<Vec<usize>> {
        let mut s = vec![Vec::new(); self.radius as usize + 1];
        for v in 0..self.graph.n() {
            s[self.depth[v] as usize].push(v);
        }
        s
    }

    /// For each vertex, whether a strictly depth-increasing path leads from it
    /// to the boundary.
    pub fn reaches_boundary(&self) -> Vec<bool> {
        let n = self.graph.n();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.depth[v as usize]));
        let mut reach = vec![false; n];
        for v in order {
            let v = v as usize;
            reach[v] = self.is_boundary(v) || self.down_neighbours(v).any(|w| reach[w]);
        }
        reach
    }

    /// The split of S_k into simple-ray origins C_k and the rest D_k.
    pub fn ray_origins(&self, k: u32) -> Result<RayOrigins> {
        if k >= self.radius {
            return Err(Error::InvalidTruncation(format!(
                "level {k} is not below the radius {}",
                self.radius
            )));
        }
        Ok(self.ray_origins_with(k, &self.reaches_boundary()))
    }

    pub(crate) fn ray_origins_with(&self, k: u32, reach: &[bool]) -> RayOrigins {
        let mut out = RayOrigins::default();
        for v in 0..self.graph.n() {
            if self.depth[v] == k {
                if reach[v] {
                    out.c.push(v);
                } else {
                    out.d.push(v);
                }
            }
        }
        out
    }

    /// The lexicographically least depth-increasing path from the root to the
    /// boundary.
    pub fn root_ray(&self) -> Vec<usize> {
        self.root_ray_with(&self.reaches_boundary())
    }

    pub(crate) fn root_ray_with(&self, reach: &[bool]) -> Vec<usize> {
        let mut path = vec![self.root];
        let mut v = self.root;
        while !self.is_boundary(v) {
            v = self
                .down_neighbours(v)
                .find(|&w| reach[w])
                .expect("a vertex that reaches the boundary has a child that does");
            path.push(v);
        }
        path
    }

    /// A geodesic path from the root to the boundary with at least six edges.
    ///
    /// A depth-increasing path from the root is geodesic, since the depth of
    /// its i-th vertex is i.
    pub fn geodesic_ray(&self) -> Result<Vec<usize>> {
        if self.radius < 6 {
            return Err(Error::Precondition(format!(
                "no geodesic ray with six edges: the radius is {}",
                self.radius
            )));
        }
        Ok(self.root_ray())
    }

    pub fn to_json_value(&self) -> TruncationJson {
        let g = self.graph.to_json_value();
        TruncationJson {
            n: g.n,
            edges: g.edges,
            root: self.root,
            radius: self.radius,
        }
    }

    /// Whether some vertex strictly inside the ball is a leaf.
    pub fn interior_leaf(&self) -> Option<usize> {
        (0..self.graph.n()).find(|&v| self.depth[v] < self.radius && self.graph.degree(v) <= 1)
    }

    /// Relabels the induced subgraph on `keep` (a set containing the root that
    /// is closed under taking BFS parents) as a truncation of the same radius.
    /// Returns the truncation and the map from new ids to old ids.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Result<(Truncation, Vec<usize>)> {
        let n = self.graph.n();
        let mut old: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        old.sort_by_key(|&v| (self.depth[v], v));
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (new_id[u], new_id[v]))
            .collect();
        let g = Graph::new(old.len(), &edges)?;
        Ok((Truncation::new(g, new_id[self.root], self.radius)?, old))
    }
}

/// `C_k` (ray origins) and `D_k` (the remaining vertices of S_k).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RayOrigins {
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub root: usize,
    pub radius: u32,
}

impl TruncationJson {
    pub fn to_truncation(&self) -> Result<Truncation> {
        let g = GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        }
        .to_graph()?;
        Truncation::new(g, self.root, self.radius)
    }
}

/// BFS-built ball around `root` in an implicitly given graph.
///
/// `neighbours` lists the neighbours of a state. States are numbered in BFS
/// discovery order, which is deterministic when `neighbours` is.
pub fn ball<S, F>(root: S, radius: u32, mut neighbours: F) -> Result<Truncation>
where
    S: Clone + Eq + std::hash::Hash,
    F: FnMut(&S) -> Vec<S>,
{
    use std::collections::HashMap;
    let mut id: HashMap<S, usize> = HashMap::new();
    let mut states = vec![root.clone()];
    let mut depth = vec![0u32];
    id.insert(root, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        let nbrs = neighbours(&states[u]);
        for s in nbrs {
            match id.get(&s) {
                Some(&w) => {
                    if u < w {
                        edges.push((u, w));
                    }
                }
                None if depth[u] < radius => {
                    let w = states.len();
                    id.insert(s.clone(), w);
                    states.push(s);
                    depth.push(depth[u] + 1);
                    edges.push((u, w));
                    queue.push_back(w);
                }
                None => {}
            }
        }
    }
    // Edges between two boundary vertices are seen from both sides.
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::new(states.len(), &edges)?;
    Truncation::new(g, 0, radius)
}
