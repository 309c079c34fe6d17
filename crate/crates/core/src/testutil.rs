//! Brute-force oracles shared by unit tests.

use crate::automorphisms::Permutation;
use crate::colouring::Kind;
use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    crate::families::path(n).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    crate::families::cycle(n).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Every automorphism, by filtering all n! bijections.
pub fn brute_force_automorphisms(g: &Graph) -> Vec<Permutation> {
    all_permutations(g.n())
        .into_iter()
        .map(|image| Permutation { image })
        .filter(|p| g.edges().all(|(u, v)| g.adjacent(p.image[u], p.image[v])))
        .collect()
}

/// Elements coloured by a kind: vertices, then edges (offset by n) for total.
fn element_images(g: &Graph, kind: Kind, p: &Permutation) -> Vec<usize> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let on_edges = || -> Vec<usize> {
        edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p.image[u].min(p.image[v]), p.image[u].max(p.image[v]));
                edges.binary_search(&(a, b)).unwrap()
            })
            .collect()
    };
    match kind {
        Kind::Vertex => p.image.clone(),
        Kind::Edge => on_edges(),
        Kind::Total => {
            let mut img = p.image.clone();
            img.extend(on_edges().into_iter().map(|f| g.n() + f));
            img
        }
    }
}

/// Pairs of elements that must differ in a proper colouring of the kind.
fn conflict_pairs(g: &Graph, kind: Kind) -> Vec<(usize, usize)> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let n = g.n();
    let mut out = Vec::new();
    let base = if kind == Kind::Edge { 0 } else { n };
    if kind != Kind::Edge {
        out.extend(edges.iter().copied());
    }
    if kind != Kind::Vertex {
        for (i, &(a, b)) in edges.iter().enumerate() {
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    out.push((base + i, base + j));
                }
            }
            if kind == Kind::Total {
                out.push((a, n + i));
                out.push((b, n + i));
            }
        }
    }
    out
}

/// Least k such that some (proper, if asked) k-colouring of the kind is
/// preserved by no non-identity automorphism, by trying all k^N colourings.
/// `None` when even N colours do not suffice.
pub fn brute_distinguishing_value(g: &Graph, kind: Kind, proper: bool) -> Option<usize> {
    let count = match kind {
        Kind::Vertex => g.n(),
        Kind::Edge => g.m(),
        Kind::Total => g.n() + g.m(),
    };
    let images: Vec<Vec<usize>> = brute_force_automorphisms(g)
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| element_images(g, kind, p))
        .collect();
    let conflicts = conflict_pairs(g, kind);
    for k in 1..=count.max(1) {
        let mut c = vec![0usize; count];
        loop {
            let ok_proper = !proper || conflicts.iter().all(|&(a, b)| c[a] != c[b]);
            if ok_proper && images.iter().all(|img| (0..count).any(|e| c[e] != c[img[e]])) {
                return Some(k);
            }
            // Next assignment in base k.
            let mut i = 0;
            while i < count && c[i] == k - 1 {
                c[i] = 0;
                i += 1;
            }
            if i == count {
                break;
            }
            c[i] += 1;
        }
    }
    None
}

/// Least k admitting a proper k-colouring of the kind, by exhaustion.
pub fn brute_chromatic(g: &Graph, kind: Kind) -> usize {
    let count = match kind {
        Kind::Vertex => g.n(),
        Kind::Edge => g.m(),
        Kind::Total => g.n() + g.m(),
    };
    let conflicts = conflict_pairs(g, kind);
    for k in 1..=count.max(1) {
        let mut c = vec![0usize; count];
        loop {
            if conflicts.iter().all(|&(a, b)| c[a] != c[b]) {
                return k;
            }
            let mut i = 0;
            while i < count && c[i] == k - 1 {
                c[i] = 0;
                i += 1;
            }
            if i == count {
                break;
            }
            c[i] += 1;
        }
    }
    unreachable!("distinct colours are always proper")
}
