//! Proper distinguishing four-colourings of subcubic graphs with infinite
//! motion, on truncations.
//!
//! Throughout, "deeper" means one sphere farther from the root.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{certify, Target};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::truncation::Truncation;

/// The special colour: the root is the only black vertex with no other black
/// vertex within distance four.
pub const BLACK: Colour = 4;

/// Radius of the first fixed sphere.
pub const FIRST_RADIUS: u32 = 7;

/// Node budget per component for the three-colour backtracking, on top of
/// twice the component size.
const BACKTRACK_SLACK: usize = 100_000;

/// A vertex and the neighbours it coloured in the standard way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardSet {
    pub vertex: usize,
    pub coloured: Vec<usize>,
}

/// One fixed sphere S_r and the data used to fix it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub r: u32,
    /// |C_r|.
    pub c_size: usize,
    /// x_1, …, x_l, deepest first.
    pub x: Vec<usize>,
    /// d_j = depth of x_j.
    pub d: Vec<u32>,
    /// The union of the sets Y_j.
    pub y: Vec<usize>,
    /// D'_r: vertices of S_r on no ray that share a component of the graph
    /// beyond S_{r−1} with Y.
    pub d_prime: Vec<usize>,
    /// Π: the chosen shortest paths from D'_r to Y.
    pub pi: Vec<usize>,
    /// Π split by distance from Y.
    pub layers: Vec<Vec<usize>>,
    /// π = the largest depth in Π, or r when Π is empty.
    pub pi_depth: u32,
    /// How many times X was pushed one sphere deeper to get d_l > π + 1.
    pub retries: u32,
    /// Standard-way colourings made from the layer vertices.
    pub layer_sets: Vec<StandardSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubcubicPlan {
    pub stages: Vec<Stage>,
    /// Why no further stage was recorded.
    pub stop: String,
    /// Vertices turned black by the final pass.
    pub final_pass: Vec<usize>,
}

impl SubcubicPlan {
    /// Checks the recorded stages against the truncation and the colouring:
    /// r_1 = 7, r_{k+1} = r_k + d^k_1 + 3, the chain d^k_1 > … > d^k_l >
    /// π^k + 1 > r_k, covering and minimality of each X^k, the standard-way
    /// sets, and that the root is the only black vertex without another black
    /// vertex within distance four.
    pub fn check(&self, t: &Truncation, c: &Colouring) -> Result<()> {
        let fail = |msg: String| Err(Error::Certification(format!("subcubic plan: {msg}")));
        let Some(first) = self.stages.first() else {
            return fail("no stage recorded".into());
        };
        if first.r != FIRST_RADIUS {
            return fail(format!("r_1 = {}, expected {FIRST_RADIUS}", first.r));
        }
        for w in self.stages.windows(2) {
            if w[1].r != w[0].r + w[0].d[0] + 3 {
                return fail(format!("r = {} does not follow r = {} with d_1 = {}", w[1].r, w[0].r, w[0].d[0]));
            }
        }
        let reach = t.reaches_boundary();
        let col = c.vertex_colours();
        for s in &self.stages {
            if s.x.is_empty() || s.x.len() != s.d.len() {
                return fail(format!("stage r = {}: X is empty or its depths are missing", s.r));
            }
            let chain_ok = s.d.windows(2).all(|w| w[0] > w[1])
                && *s.d.last().unwrap() > s.pi_depth + 1
                && s.pi_depth + 1 > s.r;
            if !chain_ok {
                return fail(format!(
                    "stage r = {}: the chain {:?} > π + 1 = {} > r fails",
                    s.r,
                    s.d,
                    s.pi_depth + 1
                ));
            }
            for (j, &x) in s.x.iter().enumerate() {
                if t.depth(x) != s.d[j] || !reach[x] {
                    return fail(format!("stage r = {}: x_{} is not a ray vertex at depth d_{}", s.r, j + 1, j + 1));
                }
            }
            let origins = t.ray_origins_with(s.r, &reach).c;
            if origins.len() != s.c_size {
                return fail(format!("stage r = {}: |C_r| is {}, recorded {}", s.r, origins.len(), s.c_size));
            }
            let covers: Vec<BTreeSet<usize>> = s.x.iter().map(|&x| cover(t, x, s.r)).collect();
            let union = |skip: Option<usize>| -> BTreeSet<usize> {
                covers
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| Some(j) != skip)
                    .flat_map(|(_, c)| c.iter().copied())
                    .collect()
            };
            if union(None) != origins.iter().copied().collect() {
                return fail(format!("stage r = {}: X does not cover C_r", s.r));
            }
            for j in 0..s.x.len() {
                if union(Some(j)).len() == origins.len() {
                    return fail(format!("stage r = {}: X is not minimal, x_{} is redundant", s.r, j + 1));
                }
            }
            for set in &s.layer_sets {
                let colours: BTreeSet<Colour> = set.coloured.iter().map(|&w| col[w]).collect();
                if colours.len() != set.coloured.len() {
                    return fail(format!(
                        "stage r = {}: the neighbours {:?} of layer vertex {} are not pairwise distinct",
                        s.r, set.coloured, set.vertex
                    ));
                }
            }
        }
        let g = t.graph();
        if col[t.root()] != BLACK {
            return fail("the root is not black".into());
        }
        for v in 0..g.n() {
            if col[v] == BLACK {
                let near = black_within(g, col, v, 4);
                if (v == t.root()) == near {
                    return fail(if v == t.root() {
                        "another black vertex lies within distance four of the root".into()
                    } else {
                        format!("black vertex {v} has no other black vertex within distance four")
                    });
                }
            }
        }
        Ok(())
    }
}

/// Whether another black vertex lies within `radius` of `v`.
fn black_within(g: &Graph, col: &[Colour], v: usize, radius: u32) -> bool {
    let mut seen = HashSet::from([v]);
    let mut frontier = vec![v];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for w in g.neighbours(u) {
                if seen.insert(w) {
                    if col[w] == BLACK {
                        return true;
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    false
}

/// Vertices reachable from `x` by steps towards the root, down to depth `r`,
/// ordered deepest first.
fn cone(t: &Truncation, x: usize, r: u32) -> Vec<usize> {
    let mut seen = HashSet::from([x]);
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let v = out[i];
        i += 1;
        if t.depth(v) > r {
            for w in t.up_neighbours(v) {
                if seen.insert(w) {
                    out.push(w);
                }
            }
        }
    }
    out.sort_by_key(|&v| (std::cmp::Reverse(t.depth(v)), v));
    out
}

/// C_r vertices lying on a ray from the root through `x`.
fn cover(t: &Truncation, x: usize, r: u32) -> BTreeSet<usize> {
    cone(t, x, r).into_iter().filter(|&v| t.depth(v) == r).collect()
}

/// Drops elements of `x` whose cover is contained in the union of the
/// others', first to last.
fn prune(t: &Truncation, mut x: Vec<usize>, r: u32) -> Vec<usize> {
    let mut j = 0;
    while j < x.len() {
        let mut others: BTreeSet<usize> = BTreeSet::new();
        for (i, &xi) in x.iter().enumerate() {
            if i != j {
                others.extend(cover(t, xi, r));
            }
        }
        if cover(t, x[j], r).is_subset(&others) {
            x.remove(j);
        } else {
            j += 1;
        }
    }
    x
}

/// Greedy choice of X for the sphere S_r: from the deepest usable sphere
/// upwards, the ray vertex covering most still uncovered ray origins (least id
/// on ties), one per sphere; then pruned to a minimal set.
fn select_x(t: &Truncation, reach: &[bool], spheres: &[Vec<usize>], r: u32, origins: &[usize]) -> std::result::Result<Vec<usize>, String> {
    let top = t.radius() - 1;
    let low = r + 2;
    if low > top {
        return Err(format!("no sphere strictly between S_{} and the boundary S_{}", r + 1, t.radius()));
    }
    // Path counts bound cover sizes from above.
    let mut paths = vec![0u64; t.graph().n()];
    for &u in origins {
        paths[u] = 1;
    }
    let mut capacity = 0u64;
    for d in r + 1..=top {
        let mut best = 0u64;
        for &v in &spheres[d as usize] {
            if !reach[v] {
                continue;
            }
            let p = t.up_neighbours(v).map(|w| paths[w]).fold(0u64, u64::saturating_add);
            paths[v] = p;
            best = best.max(p);
        }
        if d >= low {
            capacity = capacity.saturating_add(best.min(origins.len() as u64));
        }
    }
    if capacity < origins.len() as u64 {
        return Err(format!(
            "C_{r} has {} vertices, but one vertex from each of the {} spheres S_{low}..S_{top} covers at most {capacity} of them",
            origins.len(),
            top - low + 1
        ));
    }
    let mut uncovered: BTreeSet<usize> = origins.iter().copied().collect();
    let mut x = Vec::new();
    for d in (low..=top).rev() {
        if uncovered.is_empty() {
            break;
        }
        let best = spheres[d as usize]
            .iter()
            .filter(|&&v| reach[v] && paths[v] > 0)
            .map(|&v| (cover(t, v, r).intersection(&uncovered).count(), v))
            .max_by_key(|&(gain, v)| (gain, std::cmp::Reverse(v)));
        if let Some((gain, v)) = best {
            if gain > 0 {
                for u in cover(t, v, r) {
                    uncovered.remove(&u);
                }
                x.push(v);
            }
        }
    }
    if !uncovered.is_empty() {
        return Err(format!(
            "{} vertices of C_{r} remain uncovered after one choice per sphere S_{low}..S_{top}",
            uncovered.len()
        ));
    }
    Ok(prune(t, x, r))
}

/// Y, D', Π and its layers for a choice of X.
struct Geometry {
    cones: Vec<Vec<usize>>,
    y: BTreeSet<usize>,
    d_prime: Vec<usize>,
    pi: BTreeSet<usize>,
    layers: Vec<Vec<usize>>,
    pi_depth: u32,
}

fn geometry(t: &Truncation, reach: &[bool], r: u32, x: &[usize]) -> Geometry {
    let g = t.graph();
    let cones: Vec<Vec<usize>> = x.iter().map(|&xj| cone(t, xj, r)).collect();
    let y: BTreeSet<usize> = cones.iter().flatten().copied().collect();
    // Distances to Y inside the part of the graph at depth ≥ r.
    let mut dist: HashMap<usize, u32> = y.iter().map(|&v| (v, 0)).collect();
    let mut queue: VecDeque<usize> = y.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for w in g.neighbours(u) {
            if t.depth(w) >= r && !dist.contains_key(&w) {
                dist.insert(w, du + 1);
                queue.push_back(w);
            }
        }
    }
    let d_prime: Vec<usize> = (0..g.n())
        .filter(|&v| t.depth(v) == r && !reach[v] && dist.contains_key(&v))
        .collect();
    let mut pi = BTreeSet::new();
    for &u in &d_prime {
        let mut cur = u;
        pi.insert(cur);
        while dist[&cur] > 0 {
            cur = g
                .neighbours(cur)
                .find(|w| t.depth(*w) >= r && dist.get(w) == Some(&(dist[&cur] - 1)))
                .expect("a vertex at positive distance has a neighbour one step closer");
            pi.insert(cur);
        }
    }
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for &v in &pi {
        let i = dist[&v] as usize;
        if layers.len() <= i {
            layers.resize(i + 1, Vec::new());
        }
        layers[i].push(v);
    }
    let pi_depth = pi.iter().map(|&v| t.depth(v)).max().unwrap_or(r);
    Geometry {
        cones,
        y,
        d_prime,
        pi,
        layers,
        pi_depth,
    }
}

/// Whether `colour` can go on `v` without clashing with a coloured neighbour.
fn fits(g: &Graph, col: &[Colour], v: usize, colour: Colour) -> bool {
    g.neighbours(v).all(|w| col[w] != colour)
}

/// Gives the uncoloured vertices among `vertices` a proper colouring,
/// component by component: three colours without black when backtracking
/// finds one, otherwise greedily with black as the last resort. With
/// `allow_black` false the fallback is an error.
fn fill(g: &Graph, depth: &dyn Fn(usize) -> u32, col: &mut [Colour], vertices: &[usize], allow_black: bool) -> Result<()> {
    let pending: HashSet<usize> = vertices.iter().copied().filter(|&v| col[v] == 0).collect();
    let mut order: Vec<usize> = pending.iter().copied().collect();
    order.sort_by_key(|&v| (depth(v), v));
    let mut done: HashSet<usize> = HashSet::new();
    for &start in &order {
        if done.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        done.insert(start);
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for w in g.neighbours(u) {
                if pending.contains(&w) && done.insert(w) {
                    comp.push(w);
                }
            }
        }
        comp.sort_by_key(|&v| (depth(v), v));
        if backtrack(g, col, &comp, 2 * comp.len() + BACKTRACK_SLACK) {
            continue;
        }
        if !allow_black {
            return Err(Error::Certification(format!(
                "subcubic_infmotion_4: no proper three-colouring extends to vertex {}",
                comp[0]
            )));
        }
        for &v in &comp {
            col[v] = [1, 2, 3, BLACK]
                .into_iter()
                .find(|&c| fits(g, col, v, c))
                .ok_or_else(|| Error::Certification(format!("subcubic_infmotion_4: vertex {v} has no free colour")))?;
        }
    }
    Ok(())
}

/// Colours `order` with 1..3 by chronological backtracking, within a node
/// budget. Leaves `col` untouched on failure.
fn backtrack(g: &Graph, col: &mut [Colour], order: &[usize], budget: usize) -> bool {
    let mut i = 0usize;
    let mut nodes = 0usize;
    while i < order.len() {
        let v = order[i];
        let next = (col[v] + 1..=3).find(|&c| fits(g, col, v, c));
        nodes += 1;
        match next {
            Some(c) => {
                col[v] = c;
                i += 1;
            }
            None => {
                col[v] = 0;
                if i == 0 || nodes > budget {
                    for &w in order {
                        col[w] = 0;
                    }
                    return false;
                }
                i -= 1;
            }
        }
    }
    true
}

/// Colours `new` with pairwise distinct colours, properly, also avoiding
/// `avoid` when possible, with as few black vertices as possible and then
/// lexicographically least.
fn standard_assign(g: &Graph, col: &mut [Colour], new: &[usize], avoid: &[Colour]) -> Result<()> {
    if new.is_empty() {
        return Ok(());
    }
    let palette = [1, 2, 3, BLACK];
    let k = new.len();
    for strict in [true, false] {
        let mut best: Option<(usize, Vec<Colour>)> = None;
        for code in 0..4usize.pow(k as u32) {
            let choice: Vec<Colour> = (0..k).map(|i| palette[(code / 4usize.pow((k - 1 - i) as u32)) % 4]).collect();
            let distinct = choice.iter().collect::<BTreeSet<_>>().len() == k;
            if !distinct || (strict && choice.iter().any(|c| avoid.contains(c))) {
                continue;
            }
            let ok = new.iter().zip(&choice).all(|(&v, &c)| {
                g.neighbours(v).all(|w| {
                    let wc = new.iter().position(|&z| z == w).map_or(col[w], |i| choice[i]);
                    wc != c
                })
            });
            if !ok {
                continue;
            }
            let blacks = choice.iter().filter(|&&c| c == BLACK).count();
            if best.as_ref().is_none_or(|(b, _)| blacks < *b) {
                best = Some((blacks, choice));
            }
        }
        if let Some((_, choice)) = best {
            for (&v, &c) in new.iter().zip(&choice) {
                col[v] = c;
            }
            return Ok(());
        }
    }
    Err(Error::Certification(format!(
        "subcubic_infmotion_4: no standard colouring of {new:?}"
    )))
}

/// Proper distinguishing colouring with at most four colours of a truncated
/// subcubic graph without leaves inside the ball.
pub fn subcubic_infmotion_4(t: &Truncation) -> Result<(Colouring, SubcubicPlan)> {
    let g = t.graph();
    let delta = g.max_degree();
    if delta > 3 {
        return Err(Error::Precondition(format!("Δ = {delta} > 3")));
    }
    if let Some(v) = t.interior_leaf() {
        return Err(Error::Precondition(format!(
            "vertex {v} at depth {} is a leaf inside the ball, so the graph fails the infinite-motion proxy",
            t.depth(v)
        )));
    }
    let radius = t.radius();
    if radius < 2 * FIRST_RADIUS {
        return Err(Error::Precondition(format!(
            "radius {radius} is below one stage, which needs at least {}",
            2 * FIRST_RADIUS
        )));
    }
    let reach = t.reaches_boundary();
    let spheres = t.spheres();
    let depth = |v: usize| t.depth(v);

    // Plan every stage before colouring anything, so an infeasible first
    // stage fails fast.
    let mut stages = Vec::new();
    let mut r = FIRST_RADIUS;
    let stop = loop {
        let origins = t.ray_origins_with(r, &reach).c;
        let mut x = match select_x(t, &reach, &spheres, r, &origins) {
            Ok(x) => x,
            Err(reason) if stages.is_empty() => {
                return Err(Error::Precondition(format!("stage selection is infeasible: {reason}")))
            }
            Err(reason) => break reason,
        };
        let mut retries = 0;
        let geo = loop {
            let geo = geometry(t, &reach, r, &x);
            let d_l = depth(*x.last().expect("X is non-empty"));
            if d_l > geo.pi_depth + 1 {
                break Ok(geo);
            }
            let pushed: Option<Vec<usize>> = x
                .iter()
                .map(|&xj| t.down_neighbours(xj).find(|&w| reach[w] && depth(w) < radius))
                .collect();
            match pushed {
                Some(p) => {
                    x = prune(t, p, r);
                    retries += 1;
                }
                None => {
                    break Err(format!(
                        "d_l = {d_l} > π + 1 = {} fails and X cannot move deeper inside the radius",
                        geo.pi_depth + 1
                    ))
                }
            }
        };
        let geo = match geo {
            Ok(geo) => geo,
            Err(reason) if stages.is_empty() => {
                return Err(Error::Precondition(format!("stage selection is infeasible: {reason}")))
            }
            Err(reason) => break reason,
        };
        let d: Vec<u32> = x.iter().map(|&v| depth(v)).collect();
        let next = r + d[0] + 3;
        stages.push((
            Stage {
                r,
                c_size: origins.len(),
                x,
                d,
                y: geo.y.iter().copied().collect(),
                d_prime: geo.d_prime.clone(),
                pi: geo.pi.iter().copied().collect(),
                layers: geo.layers.clone(),
                pi_depth: geo.pi_depth,
                retries,
                layer_sets: Vec::new(),
            },
            geo,
        ));
        if next >= radius {
            break format!("the next sphere radius {next} is not inside the ball of radius {radius}");
        }
        r = next;
    };

    let mut col = vec![0 as Colour; g.n()];
    col[t.root()] = BLACK;
    let early: Vec<usize> = spheres[1..=4].concat();
    fill(g, &depth, &mut col, &early, false)?;
    for (stage, geo) in &mut stages {
        let r = stage.r;
        for (j, &x) in stage.x.iter().enumerate() {
            if col[x] != 0 || !fits(g, &col, x, BLACK) {
                return Err(Error::Certification(format!(
                    "subcubic_infmotion_4: x_{} = {x} cannot be coloured black",
                    j + 1
                )));
            }
            col[x] = BLACK;
            fill(g, &depth, &mut col, &spheres[stage.d[j] as usize], true)?;
            for &y in &geo.cones[j] {
                if depth(y) <= r {
                    continue;
                }
                let below: Vec<usize> = t.up_neighbours(y).collect();
                let new: Vec<usize> = below.iter().copied().filter(|&w| col[w] == 0).collect();
                let avoid: Vec<Colour> = below.iter().map(|&w| col[w]).filter(|&c| c != 0).collect();
                standard_assign(g, &mut col, &new, &avoid)?;
            }
        }
        for layer in &geo.layers {
            for &w in layer {
                let targets: Vec<usize> = g.neighbours(w).filter(|&z| depth(z) >= r && !geo.y.contains(&z)).collect();
                let new: Vec<usize> = targets.iter().copied().filter(|&z| col[z] == 0).collect();
                let avoid: Vec<Colour> = targets
                    .iter()
                    .filter(|&&z| col[z] != 0 && !geo.pi.contains(&z))
                    .map(|&z| col[z])
                    .collect();
                standard_assign(g, &mut col, &new, &avoid)?;
                if !new.is_empty() {
                    stage.layer_sets.push(StandardSet { vertex: w, coloured: new });
                }
            }
        }
        let rest: Vec<usize> = spheres[r as usize].iter().copied().filter(|&v| !reach[v]).collect();
        fill(g, &depth, &mut col, &rest, true)?;
        let inside: Vec<usize> = spheres[..=stage.d[0] as usize].concat();
        fill(g, &depth, &mut col, &inside, true)?;
    }
    let all: Vec<usize> = (0..g.n()).collect();
    fill(g, &depth, &mut col, &all, true)?;

    // Final pass: every black vertex other than the root gets a black vertex
    // within distance four.
    let mut blacks: Vec<usize> = (0..g.n()).filter(|&v| col[v] == BLACK && v != t.root()).collect();
    blacks.sort_by_key(|&v| (depth(v), v));
    let mut final_pass = Vec::new();
    for y in blacks {
        if black_within(g, &col, y, 4) {
            continue;
        }
        let u = t
            .up_neighbours(y)
            .flat_map(|w| t.up_neighbours(w).collect::<Vec<_>>())
            .min()
            .ok_or_else(|| Error::Certification(format!("subcubic_infmotion_4: black vertex {y} is too shallow")))?;
        if !fits(g, &col, u, BLACK) {
            return Err(Error::Certification(format!(
                "subcubic_infmotion_4: vertex {u} cannot turn black next to a black neighbour"
            )));
        }
        col[u] = BLACK;
        final_pass.push(u);
    }

    let plan = SubcubicPlan {
        stages: stages.into_iter().map(|(s, _)| s).collect(),
        stop,
        final_pass,
    };
    let out = Colouring::vertex(col).with_reserved(BLACK);
    certify(Target::Truncated(t), &out, true, 4, "subcubic_infmotion_4")?;
    plan.check(t, &out)?;
    Ok((out, plan))
}
