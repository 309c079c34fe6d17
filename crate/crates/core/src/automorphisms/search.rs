//! Individualization–refinement backtracking for automorphism groups of
//! vertex-coloured graphs.
//!
//! The first path of the search tree (always individualizing the least vertex
//! of the target cell) ends in a reference leaf. Levels are then processed
//! bottom-up: at level i every other vertex w of the target cell is tried,
//! and a subtree search looks for a leaf whose labelling, matched against the
//! reference leaf, is an automorphism. Such automorphisms fix the first i
//! path vertices, so the orbit of the i-th path vertex they generate is its
//! orbit in the pointwise stabilizer, and the group order is the product of
//! these orbit lengths.

use std::time::Instant;

use num_bigint::BigUint;

use super::partition::{Adjacency, Partition, Workspace};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchOptions {
    /// Skip candidates already known to be in the orbit of the path vertex,
    /// or in the orbit of a candidate that failed.
    pub prune: bool,
    /// Stop at the first non-identity automorphism.
    pub first_only: bool,
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            first_only: false,
            deadline: None,
        }
    }
}

pub(crate) struct SearchOutcome {
    pub generators: Vec<Vec<u32>>,
    /// Orbit representative (least member) of every vertex.
    pub orbit_rep: Vec<u32>,
    pub order: BigUint,
}

struct Level {
    part: Partition,
    target: usize,
    chosen: u32,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller id as the root so roots are orbit minima.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi as usize] = lo;
        }
    }

    fn absorb(&mut self, perm: &[u32]) {
        for (v, &w) in perm.iter().enumerate() {
            if v as u32 != w {
                self.union(v as u32, w);
            }
        }
    }
}

struct Searcher<'a> {
    g: Adjacency<'a>,
    keys: &'a [u32],
    opts: SearchOptions,
    ws: Workspace,
    traces: Vec<(u64, usize)>,
    levels: Vec<Level>,
    leaf: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) {
            if let Some(d) = self.opts.deadline {
                if Instant::now() > d {
                    return Err(Error::BudgetExhausted);
                }
            }
        }
        Ok(())
    }

    fn child(&mut self, part: &Partition, v: u32) -> (Partition, u64) {
        let mut p = part.clone();
        let s = p.individualize(v as usize);
        let t = p.refine(self.g, &mut self.ws, &[s as u32]);
        (p, t)
    }

    /// The permutation mapping the reference leaf onto `lab`, if it is an
    /// automorphism preserving the keys.
    fn leaf_automorphism(&mut self, lab: &[u32]) -> Option<Vec<u32>> {
        let n = lab.len();
        let mut perm = vec![0u32; n];
        for i in 0..n {
            perm[self.leaf[i] as usize] = lab[i];
        }
        for v in 0..n {
            if self.keys[v] != self.keys[perm[v] as usize] {
                return None;
            }
        }
        for v in 0..n {
            let pv = perm[v] as usize;
            if self.g.row(v).len() != self.g.row(pv).len() {
                return None;
            }
            self.stamp = self.stamp.wrapping_add(1);
            if self.stamp == 0 {
                self.mark.iter_mut().for_each(|m| *m = 0);
                self.stamp = 1;
            }
            for &w in self.g.row(pv) {
                self.mark[w as usize] = self.stamp;
            }
            if self.g.row(v).iter().any(|&w| self.mark[perm[w as usize] as usize] != self.stamp) {
                return None;
            }
        }
        Some(perm)
    }

    /// Depth-first search below a node at `level` equivalent (so far) to the
    /// first-path node at the same level.
    fn explore(&mut self, level: usize, part: Partition) -> Result<Option<Vec<u32>>> {
        self.tick()?;
        if part.is_discrete() {
            return Ok(self.leaf_automorphism(&part.lab));
        }
        let target = self.levels[level].target;
        let members: Vec<u32> = {
            let mut m = part.cell_members(target).to_vec();
            m.sort_unstable();
            m
        };
        for u in members {
            let (c, t) = self.child(&part, u);
            if (t, c.cells) != self.traces[level + 1] {
                continue;
            }
            if let Some(p) = self.explore(level + 1, c)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

pub(crate) fn search(g: Adjacency<'_>, keys: &[u32], opts: SearchOptions) -> Result<SearchOutcome> {
    let n = g.n();
    assert_eq!(keys.len(), n);
    let (mut root, starts) = Partition::from_keys(keys);
    let mut s = Searcher {
        g,
        keys,
        opts,
        ws: Workspace::new(n),
        traces: Vec::new(),
        levels: Vec::new(),
        leaf: Vec::new(),
        mark: vec![0; n],
        stamp: 0,
        nodes: 0,
    };
    let t0 = root.refine(g, &mut s.ws, &starts);
    s.traces.push((t0, root.cells));
    let mut cur = root;
    while let Some(target) = cur.target_cell() {
        s.tick()?;
        let chosen = *cur.cell_members(target).iter().min().expect("non-empty cell");
        let (next, t) = s.child(&cur, chosen);
        s.traces.push((t, next.cells));
        s.levels.push(Level {
            part: cur,
            target,
            chosen,
        });
        cur = next;
    }
    s.leaf = cur.lab;

    let mut uf = UnionFind::new(n);
    let mut generators: Vec<Vec<u32>> = Vec::new();
    let mut order = BigUint::from(1u32);
    for i in (0..s.levels.len()).rev() {
        let chosen = s.levels[i].chosen;
        let target = s.levels[i].target;
        let mut members: Vec<u32> = s.levels[i].part.cell_members(target).to_vec();
        members.sort_unstable();
        let mut failed: Vec<u32> = Vec::new();
        for w in members.iter().copied().filter(|&w| w != chosen) {
            if opts.prune {
                if uf.find(w) == uf.find(chosen) {
                    continue;
                }
                let rw = uf.find(w);
                if failed.iter().any(|&f| uf.find(f) == rw) {
                    continue;
                }
            }
            let part = s.levels[i].part.clone();
            let (c, t) = s.child(&part, w);
            let found = if (t, c.cells) == s.traces[i + 1] {
                s.explore(i + 1, c)?
            } else {
                None
            };
            match found {
                Some(perm) => {
                    uf.absorb(&perm);
                    generators.push(perm);
                    if opts.first_only {
                        return Ok(finish(&mut uf, generators, BigUint::from(0u32)));
                    }
                }
                None => failed.push(w),
            }
        }
        let root_chosen = uf.find(chosen);
        let orbit = members.iter().filter(|&&w| uf.find(w) == root_chosen).count();
        order *= BigUint::from(orbit);
    }
    Ok(finish(&mut uf, generators, order))
}

fn finish(uf: &mut UnionFind, generators: Vec<Vec<u32>>, order: BigUint) -> SearchOutcome {
    let n = uf.parent.len();
    let orbit_rep = (0..n as u32).map(|v| uf.find(v)).collect();
    SearchOutcome {
        generators,
        orbit_rep,
        order,
    }
}
