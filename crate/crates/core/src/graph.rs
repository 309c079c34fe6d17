//! Finite simple graphs in compressed adjacency form, BFS machinery and the
//! JSON interchange format.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker for "no vertex" in `u32` parent arrays.
pub const NO_VERTEX: u32 = u32::MAX;

/// A finite simple undirected graph with vertices `0..n`.
///
/// Adjacency is stored as sorted rows in one flat array. Edges carry dense ids
/// `0..m` given by the lexicographic order of their `(min, max)` endpoint pairs,
/// which is also the order of [`Graph::edges`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    nbrs: Vec<u32>,
    // up_start[v] is the id of the first edge {v, w} with w > v.
    up_start: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n >= NO_VERTEX as usize {
            return Err(Error::InvalidGraph(format!("too many vertices: {n}")));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}: ({u},{v})")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) references a vertex outside 0..{n}"
                )));
            }
            pairs.push((u.min(v) as u32, u.max(v) as u32));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// Builds a graph whose vertex count is one more than the largest endpoint.
    pub fn from_edge_list(edges: &[(usize, usize)]) -> Result<Graph> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::new(n, edges)
    }

    /// Builds a tree from a parent array (`NO_VERTEX` for the root) in linear
    /// time. Every parent must have a smaller id than its child.
    pub fn from_parents(parent: &[u32]) -> Result<Graph> {
        let n = parent.len();
        let mut deg = vec![0u32; n];
        for (v, &p) in parent.iter().enumerate() {
            if p == NO_VERTEX {
                continue;
            }
            if p as usize >= v {
                return Err(Error::InvalidGraph(format!(
                    "parent {p} of vertex {v} does not precede it"
                )));
            }
            deg[v] += 1;
            deg[p as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        offsets.push(0);
        for &d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        let mut nbrs = vec![0u32; acc as usize];
        // The parent is the only smaller neighbour, so writing it first and then
        // children in increasing order keeps every row sorted.
        for (v, &p) in parent.iter().enumerate() {
            if p != NO_VERTEX {
                nbrs[fill[v] as usize] = p;
                fill[v] += 1;
            }
        }
        for (v, &p) in parent.iter().enumerate() {
            if p != NO_VERTEX {
                nbrs[fill[p as usize] as usize] = v as u32;
                fill[p as usize] += 1;
            }
        }
        drop(fill);
        let mut up_start = Vec::with_capacity(n + 1);
        let mut e = 0u32;
        for v in 0..n {
            up_start.push(e);
            e += deg[v] - u32::from(parent[v] != NO_VERTEX);
        }
        up_start.push(e);
        Ok(Graph {
            offsets,
            nbrs,
            up_start,
        })
    }

    fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Graph {
        let mut deg = vec![0u32; n];
        let mut up = vec![0u32; n];
        for &(u, v) in pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
            up[u as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut up_start = Vec::with_capacity(n + 1);
        let (mut acc, mut e) = (0u32, 0u32);
        offsets.push(0);
        for v in 0..n {
            acc += deg[v];
            offsets.push(acc);
            up_start.push(e);
            e += up[v];
        }
        up_start.push(e);
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        let mut nbrs = vec![0u32; acc as usize];
        // Pairs are sorted, so for each row the smaller neighbours arrive in
        // order first (as second coordinates) and then the larger ones.
        for &(u, v) in pairs {
            nbrs[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        }
        for &(u, v) in pairs {
            nbrs[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
        }
        Graph {
            offsets,
            nbrs,
            up_start,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.nbrs.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    /// Maximum degree Δ (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Sorted neighbour row of `v`.
    pub fn row(&self, v: usize) -> &[u32] {
        &self.nbrs[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbours(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.row(v).iter().map(|&w| w as usize)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.row(u).binary_search(&(v as u32)).is_ok()
    }

    /// Dense id of edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        if b >= self.n() || a == b {
            return None;
        }
        let row = self.row(a);
        let pos = row.binary_search(&(b as u32)).ok()?;
        let lower = row.partition_point(|&w| (w as usize) < a);
        Some(self.up_start[a] as usize + pos - lower)
    }

    /// Endpoints `(min, max)` of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        assert!(e < self.m(), "edge id {e} out of range");
        let a = self.up_start.partition_point(|&s| s as usize <= e) - 1;
        let row = self.row(a);
        let lower = row.partition_point(|&w| (w as usize) < a);
        (a, row[lower + e - self.up_start[a] as usize] as usize)
    }

    /// All edges as `(min, max)` pairs in edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |a| {
            self.row(a)
                .iter()
                .filter(move |&&b| b as usize > a)
                .map(move |&b| (a, b as usize))
        })
    }

    /// Edge ids incident to `v`, in neighbour order.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        let lower = row.partition_point(|&w| (w as usize) < v);
        let base = self.up_start[v] as usize;
        row.iter().enumerate().map(move |(i, &w)| {
            if i < lower {
                self.edge_id(w as usize, v).expect("adjacency is symmetric")
            } else {
                base + i - lower
            }
        })
    }

    pub(crate) fn csr(&self) -> (&[u32], &[u32]) {
        (&self.offsets, &self.nbrs)
    }

    /// BFS distances from `root`; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, root: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.row(u as usize) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    /// Errors with an unreached vertex if the graph is disconnected.
    pub fn require_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Ok(());
        }
        match self.distances_from(0).iter().position(|&d| d == u32::MAX) {
            None => Ok(()),
            Some(v) => Err(Error::Disconnected { unreached: v }),
        }
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m() == self.n() - 1 && self.is_connected()
    }

    /// Whether the graph is 2-colourable.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbours(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the graph is the balanced complete bipartite graph K_{d,d}
    /// with d = Δ.
    pub fn is_balanced_complete_bipartite(&self) -> bool {
        let d = self.max_degree();
        d >= 1
            && self.n() == 2 * d
            && self.m() == d * d
            && self.is_bipartite()
            && self.is_connected()
    }

    /// Whether the graph is a cycle on `len` vertices.
    pub fn is_cycle_of_length(&self, len: usize) -> bool {
        self.n() == len
            && len >= 3
            && self.m() == len
            && (0..len).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    /// Whether every pair of vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m() == n * n.saturating_sub(1) / 2
    }

    /// Serializable form of the graph.
    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// `{"n": int, "edges": [[u,v],...]}` with `u < v` and sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &pairs)
    }
}

/// A BFS spanning tree: layer order with ascending ids inside each layer, and
/// each vertex's parent the least-id neighbour in the previous layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    pub root: usize,
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<u32>,
    /// Position of each vertex in `order`.
    pub rank: Vec<usize>,
}

impl BfsTree {
    /// Children of `v` in increasing id order.
    pub fn children(&self, g: &Graph, v: usize) -> Vec<usize> {
        g.neighbours(v)
            .filter(|&w| self.parent[w] == Some(v))
            .collect()
    }

    /// Vertices sharing the parent of `v`, excluding `v` itself.
    pub fn siblings(&self, g: &Graph, v: usize) -> Vec<usize> {
        match self.parent[v] {
            None => Vec::new(),
            Some(p) => self
                .children(g, p)
                .into_iter()
                .filter(|&w| w != v)
                .collect(),
        }
    }
}

/// BFS order from `root` with the tie-breaking rule described on [`BfsTree`].
pub fn bfs_order(g: &Graph, root: usize) -> Result<BfsTree> {
    if root >= g.n() {
        return Err(Error::InvalidVertex { vertex: root, n: g.n() });
    }
    let depth = g.distances_from(root);
    if let Some(v) = depth.iter().position(|&d| d == u32::MAX) {
        return Err(Error::Disconnected { unreached: v });
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (depth[v], v));
    let mut rank = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let parent = (0..g.n())
        .map(|v| {
            if v == root {
                None
            } else {
                g.neighbours(v).find(|&w| depth[w] + 1 == depth[v])
            }
        })
        .collect();
    Ok(BfsTree {
        root,
        order,
        parent,
        depth,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn path_has_max_degree_two() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!((g.n(), g.m(), g.max_degree()), (3, 2, 2));
    }

    #[test]
    fn duplicates_and_loops_are_rejected() {
        let dup = Graph::from_edge_list(&[(0, 1), (0, 1)]).unwrap_err();
        assert!(dup.to_string().contains("duplicate edge (0,1)"));
        let dup = Graph::from_edge_list(&[(0, 1), (1, 0)]).unwrap_err();
        assert!(dup.to_string().contains("duplicate"));
        let lp = Graph::from_edge_list(&[(2, 2)]).unwrap_err();
        assert!(lp.to_string().contains("(2,2)"));
        assert!(Graph::new(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn complete_graph_k4() {
        let g = k4();
        assert_eq!((g.n(), g.m(), g.max_degree()), (4, 6, 3));
        assert!(g.is_complete());
    }

    #[test]
    fn edge_ids_follow_lexicographic_order() {
        let g = Graph::new(5, &[(3, 4), (0, 2), (1, 3), (0, 1), (2, 3)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]);
        for (e, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(e));
            assert_eq!(g.edge_id(v, u), Some(e));
            assert_eq!(g.endpoints(e), (u, v));
        }
        assert_eq!(g.edge_id(0, 3), None);
        let mut inc: Vec<_> = g.incident_edges(3).collect();
        inc.sort();
        assert_eq!(inc, vec![2, 3, 4]);
    }

    #[test]
    fn parent_array_builds_the_same_graph() {
        let parent = [NO_VERTEX, 0, 0, 1, 1, 2];
        let t = Graph::from_parents(&parent).unwrap();
        let g = Graph::new(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(t, g);
        assert!(Graph::from_parents(&[NO_VERTEX, 2, 0]).is_err());
    }

    #[test]
    fn bfs_of_path_from_middle() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)]).unwrap();
        let t = bfs_order(&g, 1).unwrap();
        assert_eq!(t.order, vec![1, 0, 2]);
        assert_eq!(t.parent, vec![Some(1), None, Some(1)]);
    }

    #[test]
    fn bfs_of_k4_makes_siblings() {
        let g = k4();
        let t = bfs_order(&g, 0).unwrap();
        assert_eq!(t.order, vec![0, 1, 2, 3]);
        assert_eq!(t.siblings(&g, 1), vec![2, 3]);
    }

    #[test]
    fn bfs_of_star_from_leaf() {
        let g = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = bfs_order(&g, 1).unwrap();
        assert_eq!(t.depth, vec![1, 0, 2, 2]);
        assert_eq!(t.order, vec![1, 0, 2, 3]);
    }

    #[test]
    fn bfs_reports_unreached_vertex() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        match bfs_order(&g, 0) {
            Err(Error::Disconnected { unreached }) => assert_eq!(unreached, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recognises_special_graphs() {
        let k33 = Graph::new(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(k33.is_balanced_complete_bipartite());
        assert!(!k4().is_balanced_complete_bipartite());
        let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(c6.is_cycle_of_length(6));
        assert!(c6.is_bipartite());
    }

    #[test]
    fn json_round_trip() {
        let g = k4();
        let text = serde_json::to_string(&g.to_json_value()).unwrap();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#);
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
    }
}
