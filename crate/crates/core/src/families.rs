//! Deterministic generators for finite graphs and truncations of infinite
//! families, and the `family:<name>(<params>)` syntax.

use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NO_VERTEX};
use crate::truncation::{ball, Truncation};

/// A generated graph: finite, or a ball in an infinite family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Finite(Graph),
    Truncated(Truncation),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Finite(g) => g,
            Instance::Truncated(t) => t.graph(),
        }
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        match self {
            Instance::Finite(_) => None,
            Instance::Truncated(t) => Some(t),
        }
    }
}

/// A family name with integer parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<u64>,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(u64::to_string).collect();
        write!(f, "family:{}({})", self.name, params.join(","))
    }
}

struct FamilyInfo {
    name: &'static str,
    params: &'static [&'static str],
    truncated: bool,
}

const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { name: "path", params: &["n"], truncated: false },
    FamilyInfo { name: "cycle", params: &["n"], truncated: false },
    FamilyInfo { name: "complete", params: &["n"], truncated: false },
    FamilyInfo { name: "complete_bipartite", params: &["a", "b"], truncated: false },
    FamilyInfo { name: "star", params: &["k"], truncated: false },
    FamilyInfo { name: "petersen", params: &[], truncated: false },
    FamilyInfo { name: "rationals_sample", params: &["m", "seed"], truncated: false },
    FamilyInfo { name: "ray", params: &["radius"], truncated: true },
    FamilyInfo { name: "double_ray", params: &["radius"], truncated: true },
    FamilyInfo { name: "regular_tree", params: &["degree", "radius"], truncated: true },
    FamilyInfo { name: "kdd_minus_edge_rays", params: &["delta", "l"], truncated: true },
    FamilyInfo { name: "star_one_ray", params: &["delta", "radius"], truncated: true },
    FamilyInfo { name: "random_tree_min3", params: &["radius", "seed"], truncated: true },
    FamilyInfo { name: "random_subcubic_tree", params: &["radius", "seed"], truncated: true },
    FamilyInfo { name: "hex_lattice", params: &["radius"], truncated: true },
];

impl FamilySpec {
    pub fn new(name: &str, params: &[u64]) -> FamilySpec {
        FamilySpec {
            name: name.to_string(),
            params: params.to_vec(),
        }
    }

    /// Parses `family:<name>(<p1>,<p2>,...)`. A missing trailing `radius` or
    /// `seed` parameter is taken from the defaults when given.
    pub fn parse(s: &str, radius: Option<u64>, seed: Option<u64>) -> Result<FamilySpec> {
        let body = s
            .trim()
            .strip_prefix("family:")
            .ok_or_else(|| Error::Parse(format!("'{s}' does not start with 'family:'")))?;
        let (name, params) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
                (&body[..i], inner)
            }
            None => (body, ""),
        };
        let info = FAMILIES
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown family '{name}'")))?;
        let mut values = Vec::new();
        for p in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let v = p
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("parameter '{p}' of '{s}' is not a non-negative integer")))?;
            values.push(v);
        }
        while values.len() < info.params.len() {
            let v = match info.params[values.len()] {
                "radius" => radius,
                "seed" => seed,
                _ => None,
            };
            match v {
                Some(v) => values.push(v),
                None => break,
            }
        }
        if values.len() != info.params.len() {
            return Err(Error::Parse(format!(
                "family '{name}' takes parameters ({}), got {}",
                info.params.join(", "),
                values.len()
            )));
        }
        Ok(FamilySpec {
            name: name.to_string(),
            params: values,
        })
    }

    pub fn is_truncated(&self) -> bool {
        FAMILIES.iter().any(|f| f.name == self.name && f.truncated)
    }

    pub fn instantiate(&self) -> Result<Instance> {
        let p = |i: usize| -> Result<usize> {
            self.params
                .get(i)
                .map(|&x| x as usize)
                .ok_or_else(|| Error::Parse(format!("{self}: missing parameter {}", i + 1)))
        };
        let seed = |i: usize| -> Result<u64> { p(i).map(|x| x as u64) };
        let radius = |i: usize| -> Result<u32> {
            let r = p(i)?;
            u32::try_from(r).map_err(|_| Error::Parse(format!("{self}: radius {r} too large")))
        };
        use Instance::*;
        Ok(match self.name.as_str() {
            "path" => Finite(path(p(0)?)?),
            "cycle" => Finite(cycle(p(0)?)?),
            "complete" => Finite(complete(p(0)?)?),
            "complete_bipartite" => Finite(complete_bipartite(p(0)?, p(1)?)?),
            "star" => Finite(complete_bipartite(1, p(0)?)?),
            "petersen" => Finite(petersen()),
            "rationals_sample" => Finite(rationals_sample(p(0)?, seed(1)?)?),
            "ray" => Truncated(ray(radius(0)?)?),
            "double_ray" => Truncated(double_ray(radius(0)?)?),
            "regular_tree" => Truncated(regular_tree(p(0)?, radius(1)?)?),
            "kdd_minus_edge_rays" => Truncated(kdd_minus_edge_rays(p(0)?, p(1)?)?),
            "star_one_ray" => Truncated(star_one_ray(p(0)?, radius(1)?)?),
            "random_tree_min3" => Truncated(random_tree_min3(radius(0)?, seed(1)?)?),
            "random_subcubic_tree" => Truncated(random_subcubic_tree(radius(0)?, seed(1)?)?),
            "hex_lattice" => Truncated(hex_lattice(radius(0)?)?),
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        })
    }
}

fn out_of_range(what: &str) -> Error {
    Error::Precondition(format!("parameter out of range: {what}"))
}

/// Path 0-1-…-(n−1).
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(out_of_range("path needs n ≥ 1"));
    }
    Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

/// Cycle with edges i ~ i+1 (mod n).
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(out_of_range("cycle needs n ≥ 3"));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(out_of_range("complete graph needs n ≥ 1"));
    }
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges)
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(out_of_range("complete bipartite graph needs both parts non-empty"));
    }
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::new(a + b, &edges)
}

/// Outer cycle 0..5, spokes i–(i+5), inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, &edges).expect("valid edge list")
}

/// A finite sample of the bipartite graph on the rationals: for m distinct
/// rationals a_1..a_m (drawn from the seed), vertices (a_i, 1) get ids
/// `0..m` and (a_i, 0) get ids `m..2m` in draw order, with an edge
/// (a, 1)–(b, 0) whenever a < b. The vertices (max, 1) and (min, 0) have no
/// neighbours in a finite sample and are dropped, and the remaining ids are
/// compacted in order, so the result is connected.
pub fn rationals_sample(m: usize, seed: u64) -> Result<Graph> {
    if m < 2 {
        return Err(out_of_range("rationals_sample needs m ≥ 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Values p/q are kept as (p * L / q) with L the lcm of 1..=9, which is exact.
    const L: i64 = 2520;
    let mut values: Vec<i64> = Vec::with_capacity(m);
    let span = 4 * m as i64 + 8;
    while values.len() < m {
        let q = rng.random_range(1..=9i64);
        let p = rng.random_range(-span..=span);
        let x = p * (L / q);
        if !values.contains(&x) {
            values.push(x);
        }
    }
    let max = *values.iter().max().expect("m ≥ 2");
    let min = *values.iter().min().expect("m ≥ 2");
    // Old ids of kept vertices, in id order.
    let mut keep: Vec<usize> = Vec::new();
    for (i, &a) in values.iter().enumerate() {
        if a != max {
            keep.push(i);
        }
    }
    for (i, &b) in values.iter().enumerate() {
        if b != min {
            keep.push(m + i);
        }
    }
    let mut new_id = vec![usize::MAX; 2 * m];
    for (k, &old) in keep.iter().enumerate() {
        new_id[old] = k;
    }
    let mut edges = Vec::new();
    for (i, &a) in values.iter().enumerate() {
        for (j, &b) in values.iter().enumerate() {
            if a < b {
                edges.push((new_id[i], new_id[m + j]));
            }
        }
    }
    Graph::new(keep.len(), &edges)
}

/// P_{r+1} rooted at an end.
pub fn ray(radius: u32) -> Result<Truncation> {
    if radius == 0 {
        return Err(out_of_range("radius ≥ 1"));
    }
    let parent: Vec<u32> = (0..=radius).map(|i| if i == 0 { NO_VERTEX } else { i - 1 }).collect();
    Truncation::new(Graph::from_parents(&parent)?, 0, radius)
}

/// P_{2r+1} rooted at its centre; odd ids on one arm, even ids on the other.
pub fn double_ray(radius: u32) -> Result<Truncation> {
    if radius == 0 {
        return Err(out_of_range("radius ≥ 1"));
    }
    ball(0i64, radius, |&x| vec![x - 1, x + 1])
}

/// Ball in the d-regular tree; children of a vertex have consecutive ids.
pub fn regular_tree(degree: usize, radius: u32) -> Result<Truncation> {
    if degree < 3 || radius == 0 {
        return Err(out_of_range("regular_tree needs degree ≥ 3 and radius ≥ 1"));
    }
    branching_tree(radius, |depth, _| if depth == 0 { degree } else { degree - 1 })
}

/// Builds a tree level by level; `children(depth, vertex)` is queried in BFS
/// order, so ids are in BFS order too.
fn branching_tree(radius: u32, mut children: impl FnMut(u32, u32) -> usize) -> Result<Truncation> {
    let mut parent: Vec<u32> = vec![NO_VERTEX];
    let mut level_start = 0usize;
    for depth in 0..radius {
        let level_end = parent.len();
        for v in level_start..level_end {
            let k = children(depth, v as u32);
            if parent.len() + k >= NO_VERTEX as usize {
                return Err(Error::SizeBound(format!("tree of radius {radius}")));
            }
            parent.extend(std::iter::repeat_n(v as u32, k));
        }
        level_start = level_end;
    }
    Truncation::new(Graph::from_parents(&parent)?, 0, radius)
}

/// K_{Δ,Δ} minus an edge uv, with a ray attached at u and one at v, in the
/// ball of radius L + 3 around u. The ray at v carries L vertices; the ray at
/// u carries L + 3 so that both reach the boundary sphere.
pub fn kdd_minus_edge_rays(delta: usize, l: usize) -> Result<Truncation> {
    if delta < 2 || l == 0 {
        return Err(out_of_range("kdd_minus_edge_rays needs Δ ≥ 2 and L ≥ 1"));
    }
    // Provisional ids: a_i = i, b_j = Δ + j, u = a_0, v = b_0.
    let mut edges = Vec::new();
    for i in 0..delta {
        for j in 0..delta {
            if i != 0 || j != 0 {
                edges.push((i, delta + j));
            }
        }
    }
    let mut next = 2 * delta;
    let mut attach = |start: usize, len: usize, edges: &mut Vec<(usize, usize)>| {
        let mut prev = start;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    };
    attach(0, l + 3, &mut edges);
    attach(delta, l, &mut edges);
    let g = Graph::from_edge_list(&edges)?;
    relabel_bfs(&g, 0)
}

/// K_{1,Δ} with one edge replaced by a ray: the root 0, the ray starting at
/// vertex 1, and Δ−1 leaves 2..=Δ.
pub fn star_one_ray(delta: usize, radius: u32) -> Result<Truncation> {
    if delta < 2 || radius == 0 {
        return Err(out_of_range("star_one_ray needs Δ ≥ 2 and radius ≥ 1"));
    }
    let mut parent = vec![NO_VERTEX];
    parent.extend(std::iter::repeat_n(0u32, delta));
    let mut prev = 1u32;
    for _ in 1..radius {
        parent.push(prev);
        prev = parent.len() as u32 - 1;
    }
    Truncation::new(Graph::from_parents(&parent)?, 0, radius)
}

/// Random tree in which the root has 3 children and every other interior
/// vertex has 2 children, or 3 with probability 1/8. Choices are drawn in BFS
/// order, so instances with the same seed agree on their common levels.
pub fn random_tree_min3(radius: u32, seed: u64) -> Result<Truncation> {
    if radius == 0 {
        return Err(out_of_range("radius ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    branching_tree(radius, |depth, _| {
        if depth == 0 || rng.random_bool(0.125) {
            3
        } else {
            2
        }
    })
}

/// Random tree of maximum degree 3 without interior leaves: the root has 3
/// children and every other interior vertex has 1 child, or 2 with
/// probability 1/4. Choices are drawn in BFS order.
pub fn random_subcubic_tree(radius: u32, seed: u64) -> Result<Truncation> {
    if radius == 0 {
        return Err(out_of_range("radius ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    branching_tree(radius, |depth, _| {
        if depth == 0 {
            3
        } else if rng.random_bool(0.25) {
            2
        } else {
            1
        }
    })
}

/// Ball in the hexagonal lattice, drawn as a brick wall on Z²: (x, y) is
/// adjacent to (x ± 1, y), and to (x, y + 1) when x + y is even or to
/// (x, y − 1) otherwise.
pub fn hex_lattice(radius: u32) -> Result<Truncation> {
    if radius == 0 {
        return Err(out_of_range("radius ≥ 1"));
    }
    ball((0i64, 0i64), radius, |&(x, y)| {
        let vertical = if (x + y).rem_euclid(2) == 0 { y + 1 } else { y - 1 };
        let mut n = vec![(x - 1, y), (x + 1, y), (x, vertical)];
        n.sort_unstable();
        n
    })
}

/// Relabels a connected graph in BFS order from `root` (ascending old id
/// within a layer) and wraps it as a truncation of its eccentricity.
fn relabel_bfs(g: &Graph, root: usize) -> Result<Truncation> {
    let bfs = crate::graph::bfs_order(g, root)?;
    let edges: Vec<_> = g.edges().map(|(u, v)| (bfs.rank[u], bfs.rank[v])).collect();
    let radius = bfs.depth.iter().copied().max().unwrap_or(0);
    Truncation::new(Graph::new(g.n(), &edges)?, 0, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(t: &Truncation) -> Vec<usize> {
        t.spheres().iter().map(Vec::len).collect()
    }

    #[test]
    fn parse_family_strings() {
        let s = FamilySpec::parse("family:regular_tree(3, 20)", None, None).unwrap();
        assert_eq!(s, FamilySpec::new("regular_tree", &[3, 20]));
        assert_eq!(s.to_string(), "family:regular_tree(3,20)");
        let s = FamilySpec::parse("family:regular_tree(3)", Some(5), None).unwrap();
        assert_eq!(s.params, vec![3, 5]);
        assert_eq!(FamilySpec::parse("family:petersen", None, None).unwrap().params, Vec::<u64>::new());
        assert!(FamilySpec::parse("family:nope(1)", None, None).is_err());
        assert!(FamilySpec::parse("family:cycle(x)", None, None).is_err());
        assert!(FamilySpec::parse("family:cycle(3,4)", None, None).is_err());
        assert!(FamilySpec::parse("cycle(3)", None, None).is_err());
    }

    #[test]
    fn double_ray_is_a_centred_path() {
        let t = double_ray(5).unwrap();
        assert_eq!(t.graph().n(), 11);
        assert_eq!(t.root(), 0);
        assert_eq!(sizes(&t), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(t.graph().max_degree(), 2);
        assert!(t.graph().is_tree());
        assert_eq!(t.interior_leaf(), None);
    }

    #[test]
    fn regular_tree_sizes() {
        let t = regular_tree(3, 3).unwrap();
        assert_eq!(t.graph().n(), 22);
        assert_eq!(sizes(&t), vec![1, 3, 6, 12]);
        assert_eq!(t.interior_leaf(), None);
        assert!(regular_tree(2, 3).is_err());
    }

    #[test]
    fn kdd_minus_edge_rays_shape() {
        let t = kdd_minus_edge_rays(3, 6).unwrap();
        assert_eq!(t.graph().max_degree(), 3);
        assert_eq!(t.radius(), 9);
        // 6 vertices of K_{3,3} plus rays of 9 and 6 vertices.
        assert_eq!(t.graph().n(), 6 + 9 + 6);
        assert_eq!(t.graph().m(), 8 + 15);
        assert_eq!(t.boundary().len(), 2);
        assert_eq!(t.interior_leaf(), None);
    }

    #[test]
    fn star_one_ray_has_pendant_leaves() {
        let t = star_one_ray(4, 6).unwrap();
        assert_eq!(t.graph().degree(0), 4);
        let leaves: Vec<_> = (0..t.graph().n())
            .filter(|&v| t.depth(v) < t.radius() && t.graph().degree(v) == 1)
            .collect();
        assert_eq!(leaves, vec![2, 3, 4]);
        assert_eq!(t.boundary().len(), 1);
    }

    #[test]
    fn random_trees_are_deterministic_and_prefix_stable() {
        let a = random_tree_min3(6, 7).unwrap();
        let b = random_tree_min3(6, 7).unwrap();
        assert_eq!(a, b);
        let c = random_tree_min3(8, 7).unwrap();
        assert_eq!(sizes(&a)[..6], sizes(&c)[..6]);
        assert_eq!(a.interior_leaf(), None);
        assert!((0..a.graph().n()).all(|v| a.is_boundary(v) || a.graph().degree(v) >= 3));
        let s = random_subcubic_tree(12, 3).unwrap();
        assert!(s.graph().max_degree() <= 3);
        assert_eq!(s.interior_leaf(), None);
    }

    #[test]
    fn hex_lattice_is_cubic_inside() {
        let t = hex_lattice(6).unwrap();
        for v in 0..t.graph().n() {
            if t.depth(v) < t.radius() {
                assert_eq!(t.graph().degree(v), 3);
            }
        }
        // Hexagons are the shortest cycles, so spheres 0..2 grow as in the tree.
        assert_eq!(sizes(&t)[..3], [1, 3, 6]);
        assert!(!t.graph().is_tree());
    }

    #[test]
    fn rationals_sample_is_connected_bipartite() {
        for m in 2..8 {
            let g = rationals_sample(m, 11).unwrap();
            assert_eq!(g.n(), 2 * m - 2);
            assert_eq!(g.m(), m * (m - 1) / 2);
            assert!(g.is_connected() && g.is_bipartite());
        }
        assert_eq!(rationals_sample(5, 1).unwrap(), rationals_sample(5, 1).unwrap());
    }

    #[test]
    fn finite_families() {
        let p = FamilySpec::parse("family:star(4)", None, None).unwrap().instantiate().unwrap();
        assert_eq!(p.graph().max_degree(), 4);
        assert_eq!(petersen().m(), 15);
        assert!(petersen().neighbours(0).eq([1, 4, 5]));
        assert_eq!(complete_bipartite(3, 2).unwrap().m(), 6);
        assert!(cycle(2).is_err());
    }
}
