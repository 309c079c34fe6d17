//! Greedy BFS colourings: the 2Δ−1 construction with its repair loop, and
//! its restriction to trees.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{certify, low_degree_colouring, Target};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::{bfs_order, BfsTree, Graph};

/// One step of the repair loop, applied to a vertex `vertex` other than the
/// root that carried the top colour with neighbours coloured 1..Δ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Repair {
    /// `vertex` took the colour of `sibling`, whose neighbourhood differs.
    CopySibling { vertex: usize, sibling: usize, colour: Colour },
    /// `neighbour` took the top colour and `vertex` took its old colour.
    MoveTop { vertex: usize, neighbour: usize, colour: Colour },
    /// `neighbour` (not a child of the root) took the free colour
    /// `neighbour_colour` and `vertex` took its old colour.
    Shift {
        vertex: usize,
        neighbour: usize,
        neighbour_colour: Colour,
        colour: Colour,
    },
}

/// Root of the BFS tree and the repairs made, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GreedyAudit {
    pub root: usize,
    pub repairs: Vec<Repair>,
}

/// A vertex of maximum degree, preferring the truncation root.
fn max_degree_root(target: Target<'_>) -> usize {
    let g = target.graph();
    let delta = g.max_degree();
    match target.truncation() {
        Some(t) if g.degree(t.root()) == delta => t.root(),
        _ => (0..g.n()).find(|&v| g.degree(v) == delta).unwrap_or(0),
    }
}

/// Least colour ≥ 1 outside `forbidden`.
fn least_free(forbidden: &BTreeSet<Colour>) -> Colour {
    (1..).find(|c| !forbidden.contains(c)).expect("colours are unbounded")
}

/// Colours of the already coloured siblings of `v` (0 means uncoloured).
fn sibling_colours(g: &Graph, t: &BfsTree, col: &[Colour], v: usize) -> BTreeSet<Colour> {
    t.siblings(g, v)
        .into_iter()
        .map(|w| col[w])
        .filter(|&c| c != 0)
        .collect()
}

/// Proper distinguishing colouring with at most 2Δ−1 colours.
///
/// Graphs of maximum degree ≤ 2 get the direct three-colour rule for paths,
/// cycles and double rays. Finite K_{Δ,Δ} and C_6 are rejected.
pub fn proper_dist_2d1<'a>(target: impl Into<Target<'a>>) -> Result<(Colouring, GreedyAudit)> {
    let target = target.into();
    let g = target.graph();
    g.require_connected()?;
    let delta = g.max_degree();
    if let Target::Finite(_) = target {
        if g.is_balanced_complete_bipartite() {
            return Err(Error::Precondition(format!(
                "K_{{{delta},{delta}}} is excluded: it needs 2Δ colours"
            )));
        }
        if g.is_cycle_of_length(6) {
            return Err(Error::Precondition("C_6 is excluded: it needs 2Δ colours".into()));
        }
    }
    if delta <= 2 {
        let root = match target {
            Target::Truncated(t) => t.root(),
            Target::Finite(_) => (0..g.n()).find(|&v| g.degree(v) <= 1).unwrap_or(0),
        };
        let out = Colouring::vertex(low_degree_colouring(g, root)?);
        certify(target, &out, true, 3, "proper_dist_2d1")?;
        return Ok((out, GreedyAudit { root, repairs: Vec::new() }));
    }

    let root = max_degree_root(target);
    let tree = bfs_order(g, root)?;
    let top = (2 * delta - 1) as Colour;
    let mut col = vec![0 as Colour; g.n()];
    col[root] = top;
    for (i, w) in g.neighbours(root).enumerate() {
        col[w] = i as Colour + 1;
    }
    for &x in &tree.order {
        if col[x] != 0 {
            continue;
        }
        let mut forbidden: BTreeSet<Colour> = g.neighbours(x).map(|w| col[w]).filter(|&c| c != 0).collect();
        forbidden.extend(sibling_colours(g, &tree, &col, x));
        col[x] = least_free(&forbidden);
    }

    let low: BTreeSet<Colour> = (1..=delta as Colour).collect();
    let has_star = |col: &[Colour], x: usize| {
        col[x] == top
            && g.degree(x) == delta
            && g.neighbours(x).map(|w| col[w]).collect::<BTreeSet<_>>() == low
    };
    let mut repairs = Vec::new();
    let mut rounds = 0;
    while let Some(&x) = tree.order.iter().find(|&&x| x != root && has_star(&col, x)) {
        rounds += 1;
        if rounds > 4 * g.n() {
            return Err(Error::Certification(format!(
                "proper_dist_2d1: the repair loop did not settle after {} rounds",
                4 * g.n()
            )));
        }
        let nx: Vec<usize> = g.neighbours(x).collect();
        let nx_colours: BTreeSet<Colour> = nx.iter().map(|&w| col[w]).collect();
        let sibs = tree.siblings(g, x);
        // Case 1: a sibling with a different neighbourhood.
        if let Some(&j) = sibs.iter().find(|&&j| {
            col[j] != 0 && !nx_colours.contains(&col[j]) && g.neighbours(j).ne(nx.iter().copied())
        }) {
            col[x] = col[j];
            repairs.push(Repair::CopySibling { vertex: x, sibling: j, colour: col[j] });
            continue;
        }
        if sibs.iter().any(|&j| g.neighbours(j).ne(nx.iter().copied())) {
            return Err(Error::Certification(format!(
                "proper_dist_2d1: no sibling colour of vertex {x} can be copied properly"
            )));
        }
        // Case 2: every sibling has the neighbourhood of x.
        let y_of = |s: Colour| *nx.iter().find(|&&w| col[w] == s).expect("neighbours carry 1..Δ");
        let other_top = |col: &[Colour], y: usize| g.neighbours(y).any(|w| w != x && col[w] == top);
        let movable = (1..=delta as Colour).find(|&s| {
            let y = y_of(s);
            y != root
                && tree.parent[y].is_none_or(|p| col[p] != top)
                && !sibling_colours(g, &tree, &col, y).contains(&top)
                && !other_top(&col, y)
        });
        if let Some(s) = movable {
            let y = y_of(s);
            col[y] = top;
            col[x] = s;
            repairs.push(Repair::MoveTop { vertex: x, neighbour: y, colour: s });
            continue;
        }
        let mut shifted = false;
        for s in 1..=delta as Colour {
            let y = y_of(s);
            if y == root || tree.parent[y] == Some(root) {
                continue;
            }
            let mut forbidden = sibling_colours(g, &tree, &col, y);
            forbidden.extend(tree.parent[y].map(|p| col[p]));
            forbidden.extend(g.neighbours(y).filter(|&w| w != x).map(|w| col[w]));
            forbidden.insert(s);
            if let Some(i) = (1..=delta as Colour).find(|i| !forbidden.contains(i)) {
                col[y] = i;
                col[x] = s;
                repairs.push(Repair::Shift { vertex: x, neighbour: y, neighbour_colour: i, colour: s });
                shifted = true;
                break;
            }
        }
        if !shifted {
            return Err(Error::Certification(format!("proper_dist_2d1: no repair applies at vertex {x}")));
        }
    }
    let out = Colouring::vertex(col);
    certify(target, &out, true, top as usize, "proper_dist_2d1")?;
    Ok((out, GreedyAudit { root, repairs }))
}

/// Proper distinguishing colouring of a tree with at most Δ+1 colours: the
/// root (of maximum degree) takes Δ+1, its children 1..Δ, and every later
/// vertex the least colour avoiding its parent and its coloured siblings.
pub fn tree_dplus1<'a>(target: impl Into<Target<'a>>) -> Result<(Colouring, GreedyAudit)> {
    let target = target.into();
    let g = target.graph();
    if !g.is_tree() {
        return Err(Error::Precondition("the graph is not a tree".into()));
    }
    let delta = g.max_degree();
    let root = max_degree_root(target);
    let tree = bfs_order(g, root)?;
    let mut col = vec![0 as Colour; g.n()];
    col[root] = delta as Colour + 1;
    for (i, w) in g.neighbours(root).enumerate() {
        col[w] = i as Colour + 1;
    }
    for &x in &tree.order {
        if col[x] != 0 {
            continue;
        }
        let mut forbidden = sibling_colours(g, &tree, &col, x);
        forbidden.extend(tree.parent[x].map(|p| col[p]));
        col[x] = least_free(&forbidden);
    }
    let out = Colouring::vertex(col);
    certify(target, &out, true, delta + 1, "tree_dplus1")?;
    Ok((out, GreedyAudit { root, repairs: Vec::new() }))
}
