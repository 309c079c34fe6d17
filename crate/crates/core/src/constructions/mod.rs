//! Constructive colourings with certification.
//!
//! Every construction checks its own output (properness where claimed, the
//! colour bound, and the distinguishing property) and returns an error rather
//! than an uncertified colouring. Finite graphs are certified against their
//! full automorphism group, truncations in boundary-pointwise mode.

mod edge;
mod greedy;
mod pins;
mod run;
mod subcubic;
mod trees;

#[cfg(test)]
mod tests;

pub use edge::{edge_from_vertex_colouring, EdgeCase};
pub use greedy::{proper_dist_2d1, tree_dplus1, GreedyAudit, Repair};
pub use pins::{edge_dist_pin_ray, greedy_edge_colouring, total_dist_pin, PinAudit};
pub use run::{run, Algorithm};
pub use subcubic::{subcubic_infmotion_4, Stage, SubcubicPlan, BLACK};
pub use trees::{tree_delta, tree_infmotion_3, CoreKind, RedPlacement, RedSchedule, TreeDeltaAudit, RED};

use crate::automorphisms::{self, BoundaryMode, Verdict};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::families::Instance;
use crate::graph::Graph;
use crate::truncation::Truncation;

/// A finite graph or a truncation, borrowed.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Finite(&'a Graph),
    Truncated(&'a Truncation),
}

impl<'a> Target<'a> {
    pub fn graph(&self) -> &'a Graph {
        match self {
            Target::Finite(g) => g,
            Target::Truncated(t) => t.graph(),
        }
    }

    pub fn truncation(&self) -> Option<&'a Truncation> {
        match self {
            Target::Finite(_) => None,
            Target::Truncated(t) => Some(t),
        }
    }

    /// Distinguishing check matching the target: full group for finite
    /// graphs, boundary-pointwise for truncations.
    pub fn verdict(&self, c: &Colouring) -> Result<Verdict> {
        match self {
            Target::Finite(g) => automorphisms::is_distinguishing(g, c),
            Target::Truncated(t) => automorphisms::truncation_distinguishing(t, c, BoundaryMode::Pointwise),
        }
    }
}

impl<'a> From<&'a Graph> for Target<'a> {
    fn from(g: &'a Graph) -> Self {
        Target::Finite(g)
    }
}

impl<'a> From<&'a Truncation> for Target<'a> {
    fn from(t: &'a Truncation) -> Self {
        Target::Truncated(t)
    }
}

impl<'a> From<&'a Instance> for Target<'a> {
    fn from(i: &'a Instance) -> Self {
        match i {
            Instance::Finite(g) => Target::Finite(g),
            Instance::Truncated(t) => Target::Truncated(t),
        }
    }
}

/// Checks a construction's output; `bound` caps the number of colours.
pub(crate) fn certify(target: Target<'_>, c: &Colouring, proper: bool, bound: usize, what: &str) -> Result<()> {
    let g = target.graph();
    c.check_domain(g)?;
    if proper {
        if let Some(conflict) = c.first_conflict(g) {
            return Err(Error::Certification(format!("{what}: output is not proper: {conflict}")));
        }
    }
    if c.num_colours() > bound {
        return Err(Error::Certification(format!(
            "{what}: output uses {} colours, more than the bound {bound}",
            c.num_colours()
        )));
    }
    if let Verdict::Preserved { witness } = target.verdict(c)? {
        return Err(Error::Certification(format!(
            "{what}: output is preserved by the automorphism moving {:?}",
            witness.support()
        )));
    }
    Ok(())
}

/// Vertices of a path or cycle in walking order, starting from `start` (an
/// end of a path) and stepping to the least-id neighbour first.
fn walk_from(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(w) = g.neighbours(cur).find(|&w| Some(w) != prev && w != start) {
        order.push(w);
        prev = Some(cur);
        cur = w;
    }
    order
}

/// The three-colour rule for graphs of maximum degree ≤ 2: a path coloured
/// 3, 1, 2, 1, 2, … from a chosen end; a double ray (rooted at an interior
/// vertex) coloured 3 at the root with arms 1, 2, 1, … and 2, 1, 2, …; and
/// cycles other than C_4 and C_6 coloured so that the colour-3 vertices
/// break every reflection.
pub(crate) fn low_degree_colouring(g: &Graph, root: usize) -> Result<Vec<Colour>> {
    let n = g.n();
    let mut c = vec![0 as Colour; n];
    if n == 1 {
        c[0] = 1;
        return Ok(c);
    }
    if g.degree(root) == 2 && g.is_tree() {
        c[root] = 3;
        for (arm, first) in g.neighbours(root).zip([1, 2]) {
            let mut prev = root;
            let mut cur = arm;
            let mut colour = first;
            loop {
                c[cur] = colour;
                colour = 3 - colour;
                match g.neighbours(cur).find(|&w| w != prev) {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
        }
        return Ok(c);
    }
    if g.is_tree() {
        let order = walk_from(g, root);
        for (i, &v) in order.iter().enumerate() {
            c[v] = if i == 0 { 3 } else if i % 2 == 1 { 1 } else { 2 };
        }
        return Ok(c);
    }
    // A cycle.
    let order = walk_from(g, root);
    let pattern: Vec<Colour> = match n {
        4 | 6 => {
            return Err(Error::Precondition(format!(
                "C_{n} needs 2Δ colours for a distinguishing proper colouring"
            )))
        }
        _ if n % 2 == 1 => {
            let mut p = vec![3];
            p.extend((1..n).map(|i| if i % 2 == 1 { 1 } else { 2 }));
            p
        }
        _ => {
            let mut p = vec![3, 1, 2, 3];
            p.extend((4..n).map(|i| if i % 2 == 0 { 1 } else { 2 }));
            p
        }
    };
    for (i, &v) in order.iter().enumerate() {
        c[v] = pattern[i];
    }
    Ok(c)
}
