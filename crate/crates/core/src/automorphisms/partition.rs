//! Ordered partitions with equitable refinement.
//!
//! Cells occupy contiguous ranges of `lab`. Every operation depends only on
//! the ordered cell structure and on adjacency, never on vertex labels, so
//! refinement commutes with graph isomorphisms.

use std::collections::VecDeque;

/// Compressed adjacency over vertices `0..n`.
#[derive(Clone, Copy)]
pub(crate) struct Adjacency<'a> {
    pub offsets: &'a [u32],
    pub nbrs: &'a [u32],
}

impl<'a> Adjacency<'a> {
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &'a [u32] {
        &self.nbrs[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub lab: Vec<u32>,
    pos: Vec<u32>,
    /// Start position of the cell holding each vertex.
    cell: Vec<u32>,
    /// Cell length, valid at cell start positions.
    len: Vec<u32>,
    pub cells: usize,
}

/// Scratch space shared by refinements of one search.
pub(crate) struct Workspace {
    count: Vec<u32>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
    in_queue: Vec<bool>,
    block: Vec<u32>,
}

impl Workspace {
    pub fn new(n: usize) -> Workspace {
        Workspace {
            count: vec![0; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
            in_queue: vec![false; n],
            block: Vec::new(),
        }
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
}

impl Partition {
    /// Cells are the classes of equal key, ordered by key. Returns the
    /// partition and the start positions of its cells.
    pub fn from_keys(keys: &[u32]) -> (Partition, Vec<u32>) {
        let n = keys.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_unstable_by_key(|&v| (keys[v as usize], v));
        let mut pos = vec![0u32; n];
        let mut cell = vec![0u32; n];
        let mut len = vec![0u32; n];
        let mut starts = Vec::new();
        let mut i = 0;
        while i < n {
            let k = keys[lab[i] as usize];
            let mut j = i;
            while j < n && keys[lab[j] as usize] == k {
                pos[lab[j] as usize] = j as u32;
                cell[lab[j] as usize] = i as u32;
                j += 1;
            }
            len[i] = (j - i) as u32;
            starts.push(i as u32);
            i = j;
        }
        let cells = starts.len();
        (
            Partition {
                lab,
                pos,
                cell,
                len,
                cells,
            },
            starts,
        )
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    pub fn cell_members(&self, start: usize) -> &[u32] {
        &self.lab[start..start + self.len[start] as usize]
    }

    #[cfg(test)]
    pub fn cell_of(&self, v: usize) -> usize {
        self.cell[v] as usize
    }

    /// Start of the first smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        let mut i = 0;
        while i < self.n() {
            let l = self.len[i];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, i));
                if l == 2 {
                    break;
                }
            }
            i += l as usize;
        }
        best.map(|(_, s)| s)
    }

    /// Splits `v` off the front of its cell; returns the start of the new
    /// singleton cell.
    pub fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell[v] as usize;
        let l = self.len[s] as usize;
        if l == 1 {
            return s;
        }
        let pv = self.pos[v] as usize;
        let z = self.lab[s];
        self.lab[pv] = z;
        self.pos[z as usize] = pv as u32;
        self.lab[s] = v as u32;
        self.pos[v] = s as u32;
        for p in s + 1..s + l {
            self.cell[self.lab[p] as usize] = (s + 1) as u32;
        }
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// starting from the given splitter cells. Returns a hash of the
    /// refinement trace, which is an isomorphism invariant of the node.
    pub fn refine(&mut self, g: Adjacency<'_>, ws: &mut Workspace, splitters: &[u32]) -> u64 {
        let mut trace = 0x5bd1_e995u64;
        for &s in splitters {
            if !ws.in_queue[s as usize] {
                ws.in_queue[s as usize] = true;
                ws.queue.push_back(s);
            }
        }
        while let Some(w) = ws.queue.pop_front() {
            ws.in_queue[w as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let w = w as usize;
            for i in w..w + self.len[w] as usize {
                for &y in g.row(self.lab[i] as usize) {
                    if ws.count[y as usize] == 0 {
                        ws.touched.push(y);
                    }
                    ws.count[y as usize] += 1;
                }
            }
            if ws.touched.is_empty() {
                continue;
            }
            let mut touched = std::mem::take(&mut ws.touched);
            {
                let cell = &self.cell;
                let count = &ws.count;
                touched.sort_unstable_by_key(|&y| (cell[y as usize], count[y as usize], y));
            }
            let mut i = 0;
            while i < touched.len() {
                let s = self.cell[touched[i] as usize];
                let mut j = i;
                while j < touched.len() && self.cell[touched[j] as usize] == s {
                    j += 1;
                }
                let first = ws.count[touched[i] as usize];
                let last = ws.count[touched[j - 1] as usize];
                let whole = (j - i) as u32 == self.len[s as usize];
                trace = mix(trace, ((w as u64) << 32) | s as u64);
                if !(whole && first == last) {
                    ws.block.clear();
                    ws.block.extend_from_slice(&touched[i..j]);
                    trace = self.split(s as usize, ws, trace);
                }
                i = j;
            }
            for &y in &touched {
                ws.count[y as usize] = 0;
            }
            touched.clear();
            ws.touched = touched;
        }
        mix(trace, self.cells as u64)
    }

    /// Splits the cell at `s` by the counts of `ws.block` (sorted by count).
    /// Vertices of the cell outside the block have count zero.
    fn split(&mut self, s: usize, ws: &mut Workspace, mut trace: u64) -> u64 {
        let l = self.len[s] as usize;
        let k = ws.block.len();
        let mut back = s + l;
        for &y in &ws.block {
            back -= 1;
            let py = self.pos[y as usize] as usize;
            let z = self.lab[back];
            self.lab[py] = z;
            self.pos[z as usize] = py as u32;
            self.lab[back] = y;
            self.pos[y as usize] = back as u32;
        }
        let base = s + l - k;
        for (i, &y) in ws.block.iter().enumerate() {
            self.lab[base + i] = y;
            self.pos[y as usize] = (base + i) as u32;
        }
        // Fragments as (start, length), in position order.
        let mut frags: Vec<(usize, usize)> = Vec::new();
        if base > s {
            frags.push((s, base - s));
        }
        let mut i = 0;
        while i < k {
            let c = ws.count[ws.block[i] as usize];
            let mut j = i;
            while j < k && ws.count[ws.block[j] as usize] == c {
                j += 1;
            }
            frags.push((base + i, j - i));
            trace = mix(trace, ((c as u64) << 32) | (j - i) as u64);
            i = j;
        }
        for &(fs, fl) in &frags {
            self.len[fs] = fl as u32;
            if fs != s {
                for p in fs..fs + fl {
                    self.cell[self.lab[p] as usize] = fs as u32;
                }
            }
        }
        self.cells += frags.len() - 1;
        if ws.in_queue[s] {
            for &(fs, _) in &frags[1..] {
                ws.in_queue[fs] = true;
                ws.queue.push_back(fs as u32);
            }
        } else {
            let mut largest = 0;
            for (idx, &(_, fl)) in frags.iter().enumerate() {
                if fl > frags[largest].1 {
                    largest = idx;
                }
            }
            for (idx, &(fs, _)) in frags.iter().enumerate() {
                if idx != largest {
                    ws.in_queue[fs] = true;
                    ws.queue.push_back(fs as u32);
                }
            }
        }
        trace
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn adjacency(g: &Graph) -> Adjacency<'_> {
        let (offsets, nbrs) = g.csr();
        Adjacency { offsets, nbrs }
    }

    #[test]
    fn path_refines_by_degree_and_distance() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (mut p, starts) = Partition::from_keys(&[0; 5]);
        let mut ws = Workspace::new(5);
        p.refine(adjacency(&g), &mut ws, &starts);
        // Ends, their neighbours, and the centre.
        assert_eq!(p.cells, 3);
        assert_eq!(p.cell_of(0), p.cell_of(4));
        assert_eq!(p.cell_of(1), p.cell_of(3));
        assert_ne!(p.cell_of(0), p.cell_of(2));
    }

    #[test]
    fn individualizing_an_end_of_a_path_is_discrete() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (mut p, starts) = Partition::from_keys(&[0; 5]);
        let mut ws = Workspace::new(5);
        p.refine(adjacency(&g), &mut ws, &starts);
        let s = p.individualize(0);
        p.refine(adjacency(&g), &mut ws, &[s as u32]);
        assert!(p.is_discrete());
    }

    #[test]
    fn regular_graph_stays_unit() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let (mut p, starts) = Partition::from_keys(&[0; 6]);
        let mut ws = Workspace::new(6);
        p.refine(adjacency(&g), &mut ws, &starts);
        assert_eq!(p.cells, 1);
        assert_eq!(p.target_cell(), Some(0));
    }

    #[test]
    fn traces_agree_on_isomorphic_nodes() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let (mut p, starts) = Partition::from_keys(&[0; 5]);
        let mut ws = Workspace::new(5);
        p.refine(adjacency(&g), &mut ws, &starts);
        let mut a = p.clone();
        let mut b = p.clone();
        let sa = a.individualize(1);
        let ta = a.refine(adjacency(&g), &mut ws, &[sa as u32]);
        let sb = b.individualize(3);
        let tb = b.refine(adjacency(&g), &mut ws, &[sb as u32]);
        assert_eq!(ta, tb);
        assert!(a.is_discrete() && b.is_discrete());
    }
}
