//! Every connected graph on n vertices up to isomorphism, for small n.
//!
//! Graphs on n vertices are grown from those on n − 1 vertices by adding a
//! vertex joined to a non-empty subset. Each connected graph has a non-cut
//! vertex of minimum degree among its non-cut vertices, whose removal leaves
//! a connected graph, so only augmentations where the new vertex is such a
//! vertex are kept. Isomorphic duplicates are removed by canonical form.

use std::collections::HashSet;
use std::sync::Mutex;

use canonical_form::Canonize;

use crate::graph::Graph;

/// Largest order supported (bit-mask rows are `u16`).
pub const MAX_ATLAS_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Bits {
    adj: Vec<u16>,
}

impl Canonize for Bits {
    fn size(&self) -> usize {
        self.adj.len()
    }

    fn apply_morphism(&self, perm: &[usize]) -> Self {
        let mut adj = vec![0u16; self.adj.len()];
        for (u, &row) in self.adj.iter().enumerate() {
            let mut r = 0u16;
            let mut bits = row;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                r |= 1 << perm[v];
            }
            adj[perm[u]] = r;
        }
        Bits { adj }
    }

    fn invariant_color(&self, u: usize) -> u64 {
        self.adj[u].count_ones() as u64
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        let row = self.adj[u];
        (0..self.adj.len()).filter(move |&v| row >> v & 1 == 1).map(|v| (v, 0))
    }
}

impl Bits {
    fn connected_without(&self, skip: usize) -> bool {
        let n = self.adj.len();
        let all: u16 = (((1u32 << n) - 1) as u16) & !(1 << skip);
        if all == 0 {
            return true;
        }
        let start = all.trailing_zeros();
        let mut seen: u16 = 1 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & all & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == all
    }

    fn to_graph(&self) -> Graph {
        let n = self.adj.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adj[u] >> v & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("bit rows describe a simple graph")
    }

    fn edge_count(&self) -> u32 {
        self.adj.iter().map(|r| r.count_ones()).sum::<u32>() / 2
    }
}

static LEVELS: Mutex<Vec<Vec<Bits>>> = Mutex::new(Vec::new());

fn grow(prev: &[Bits], n: usize) -> Vec<Bits> {
    let mut seen: HashSet<Bits> = HashSet::new();
    let new = n - 1;
    for h in prev {
        for mask in 1u32..(1 << new) {
            let mut adj = h.adj.clone();
            adj.push(mask as u16);
            for (v, row) in adj.iter_mut().enumerate().take(new) {
                if mask >> v & 1 == 1 {
                    *row |= 1 << new;
                }
            }
            let g = Bits { adj };
            let d = mask.count_ones();
            let smaller_non_cut = (0..new)
                .any(|u| g.adj[u].count_ones() < d && g.connected_without(u));
            if smaller_non_cut {
                continue;
            }
            seen.insert(g.canonical());
        }
    }
    let mut out: Vec<Bits> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.edge_count(), &a.adj).cmp(&(b.edge_count(), &b.adj)));
    out
}

fn level(n: usize) -> Vec<Bits> {
    assert!(
        (1..=MAX_ATLAS_ORDER).contains(&n),
        "atlas order must lie in 1..={MAX_ATLAS_ORDER}"
    );
    let mut levels = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    if levels.is_empty() {
        levels.push(vec![Bits { adj: vec![0] }]);
    }
    while levels.len() < n {
        let k = levels.len() + 1;
        let next = grow(&levels[k - 2], k);
        levels.push(next);
    }
    levels[n - 1].clone()
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class, in a
/// fixed order (by edge count, then canonical adjacency).
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    level(n).iter().map(Bits::to_graph).collect()
}

/// Number of connected graphs on `n` vertices.
pub fn count(n: usize) -> usize {
    level(n).len()
}
