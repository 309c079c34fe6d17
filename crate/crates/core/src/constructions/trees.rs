//! Three-colourings of trees with infinite motion, and their extension to
//! trees with finite pendant subtrees.

use serde::Serialize;

use super::{certify, low_degree_colouring, Target};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::truncation::Truncation;

/// The extra colour of the tree constructions; 1 and 2 alternate by depth.
pub const RED: Colour = 3;

/// A scheduled red vertex on the ray chosen from `origin`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedPlacement {
    pub level: u32,
    pub vertex: usize,
    pub origin: usize,
}

/// The level sequence k_1 = 3, k_{n+1} = k_n + |C_{k_n}| + 1 and the red
/// vertices it places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedSchedule {
    /// Every term computed, including the first one whose stage does not fit
    /// inside the radius.
    pub k: Vec<u32>,
    /// |C_{k_n}| for each completed stage.
    pub c_sizes: Vec<usize>,
    pub placements: Vec<RedPlacement>,
    /// Last level holding a scheduled red vertex.
    pub horizon: u32,
}

impl RedSchedule {
    /// Checks the recurrence against the truncation and the red pattern
    /// against the colouring: the root and all of S_2 red, exactly one red
    /// vertex in each level from 3 to the horizon except the levels k_n, and
    /// no other red vertex.
    pub fn check(&self, t: &Truncation, c: &Colouring) -> Result<()> {
        let fail = |msg: String| Err(Error::Certification(format!("red schedule: {msg}")));
        if self.k.first() != Some(&3) {
            return fail("k_1 is not 3".into());
        }
        let reach = t.reaches_boundary();
        for (i, &size) in self.c_sizes.iter().enumerate() {
            let actual = t.ray_origins_with(self.k[i], &reach).c.len();
            if actual != size {
                return fail(format!("|C_{}| is {actual}, recorded {size}", self.k[i]));
            }
            if self.k.get(i + 1) != Some(&(self.k[i] + size as u32 + 1)) {
                return fail(format!("k_{} does not follow the recurrence", i + 2));
            }
        }
        let col = c.vertex_colours();
        let mut reds = vec![0usize; t.radius() as usize + 1];
        for v in 0..t.graph().n() {
            if col[v] == RED {
                reds[t.depth(v) as usize] += 1;
            }
        }
        let spheres = t.spheres();
        if reds[0] != 1 || reds[1] != 0 || reds[2] != spheres[2].len() {
            return fail("levels 0..2 do not match the pattern".into());
        }
        for level in 3..=t.radius() {
            let expected = usize::from(level <= self.horizon && !self.k.contains(&level));
            if reds[level as usize] != expected {
                return fail(format!(
                    "level {level} holds {} red vertices, expected {expected}",
                    reds[level as usize]
                ));
            }
        }
        Ok(())
    }
}

/// Proper distinguishing three-colouring of a truncated tree whose root has
/// degree ≥ 3 and which has no leaf strictly inside the ball.
pub fn tree_infmotion_3(t: &Truncation) -> Result<(Colouring, RedSchedule)> {
    let g = t.graph();
    if !g.is_tree() {
        return Err(Error::Precondition("the graph is not a tree".into()));
    }
    let root = t.root();
    if g.degree(root) < 3 {
        return Err(Error::Precondition(format!("the root has degree {} < 3", g.degree(root))));
    }
    if let Some(v) = t.interior_leaf() {
        return Err(Error::Precondition(format!(
            "vertex {v} at depth {} is a leaf inside the ball, so the tree fails the infinite-motion proxy",
            t.depth(v)
        )));
    }
    let reach = t.reaches_boundary();
    let r = t.radius();
    let first = t.ray_origins_with(3.min(r), &reach).c.len() as u32;
    if r <= 3 + first {
        return Err(Error::Precondition(format!(
            "radius {r} is too small: one stage needs a radius above k_1 + |C_3| = {}",
            3 + first
        )));
    }

    let mut col: Vec<Colour> = (0..g.n()).map(|v| 1 + t.depth(v) % 2).collect();
    col[root] = RED;
    for v in 0..g.n() {
        if t.depth(v) == 2 {
            col[v] = RED;
        }
    }
    let mut schedule = RedSchedule {
        k: vec![3],
        c_sizes: Vec::new(),
        placements: Vec::new(),
        horizon: 2,
    };
    let mut k = 3u32;
    while k < r {
        let origins = t.ray_origins_with(k, &reach).c;
        if k + origins.len() as u32 >= r {
            break;
        }
        for (i, &u) in origins.iter().enumerate() {
            let level = k + 1 + i as u32;
            // The ray from u through least children that reach the boundary.
            let mut v = u;
            while t.depth(v) < level {
                v = t
                    .down_neighbours(v)
                    .find(|&w| reach[w])
                    .expect("a ray origin has a child on a ray");
            }
            col[v] = RED;
            schedule.placements.push(RedPlacement { level, vertex: v, origin: u });
        }
        schedule.c_sizes.push(origins.len());
        schedule.horizon = k + origins.len() as u32;
        k += origins.len() as u32 + 1;
        schedule.k.push(k);
    }
    for p in &schedule.placements {
        if let Some(w) = g.neighbours(p.vertex).find(|&w| col[w] == RED) {
            return Err(Error::Certification(format!(
                "tree_infmotion_3: red vertices {} and {w} are adjacent",
                p.vertex
            )));
        }
    }
    let out = Colouring::vertex(col).with_reserved(RED);
    certify(Target::Truncated(t), &out, true, 3, "tree_infmotion_3")?;
    schedule.check(t, &out)?;
    Ok((out, schedule))
}

/// Shape of the core left after deleting the finite pendant subtrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreKind {
    /// The root has at least three neighbours in the core, which is coloured
    /// by [`tree_infmotion_3`].
    Branching,
    /// The core is a path through the root, coloured by the ray rule.
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDeltaAudit {
    pub core: CoreKind,
    pub core_size: usize,
    pub pendant_vertices: usize,
    /// The core's schedule, with vertex ids of the whole truncation.
    pub schedule: Option<RedSchedule>,
}

/// Proper distinguishing colouring of a truncated tree with at most Δ ≥ 3
/// colours: the core is coloured first, then each finite pendant subtree in
/// BFS order with siblings pairwise distinct.
pub fn tree_delta(t: &Truncation) -> Result<(Colouring, TreeDeltaAudit)> {
    let g = t.graph();
    if !g.is_tree() {
        return Err(Error::Precondition("the graph is not a tree".into()));
    }
    let delta = g.max_degree();
    if delta < 3 {
        return Err(Error::Precondition(format!("Δ = {delta} < 3")));
    }
    let reach = t.reaches_boundary();
    let (core, old) = t.restrict(&reach)?;
    let cg = core.graph();
    let root_degree = cg.degree(core.root());
    let mut col = vec![0 as Colour; g.n()];
    let (kind, schedule) = if root_degree >= 3 {
        let (cc, mut s) = tree_infmotion_3(&core)?;
        for (i, &c) in cc.vertex_colours().iter().enumerate() {
            col[old[i]] = c;
        }
        for p in &mut s.placements {
            p.vertex = old[p.vertex];
            p.origin = old[p.origin];
        }
        (CoreKind::Branching, Some(s))
    } else if cg.max_degree() <= 2 {
        for (i, c) in low_degree_colouring(cg, core.root())?.into_iter().enumerate() {
            col[old[i]] = c;
        }
        (CoreKind::Path, None)
    } else {
        return Err(Error::Precondition(
            "the core is neither a path nor branching at the root".into(),
        ));
    };

    let mut order: Vec<usize> = (0..g.n()).filter(|&v| !reach[v]).collect();
    order.sort_by_key(|&v| (t.depth(v), v));
    for &v in &order {
        let p = t.up_neighbours(v).next().expect("a pendant vertex has a parent");
        let used: Vec<Colour> = t
            .down_neighbours(p)
            .filter(|&w| !reach[w] && col[w] != 0)
            .map(|w| col[w])
            .chain([col[p]])
            .collect();
        col[v] = (1..).find(|c| !used.contains(c)).expect("colours are unbounded");
    }
    let mut out = Colouring::vertex(col);
    if kind == CoreKind::Branching {
        out = out.with_reserved(RED);
    }
    certify(Target::Truncated(t), &out, true, delta, "tree_delta")?;
    Ok((
        out,
        TreeDeltaAudit {
            core: kind,
            core_size: cg.n(),
            pendant_vertices: order.len(),
            schedule,
        },
    ))
}
