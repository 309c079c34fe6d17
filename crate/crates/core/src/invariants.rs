//! Exact chromatic and distinguishing invariants of small connected graphs.
//!
//! Every value comes from a backtracking search over colourings in a fixed
//! element order. New colours are introduced in increasing order, which
//! removes colour permutations. For distinguishing searches, each non-trivial
//! automorphism is checked once, at the position of the last element it moves:
//! if it preserves the colours assigned so far, it preserves every completion,
//! so the branch is cut.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::automorphisms::{self, aut_group, enumerate_group, Motion, Permutation, Structure};
use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::truncation::Truncation;

/// Search bounds. Exceeding a size bound is an error, not a slow search.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest vertex count for vertex colourings.
    pub max_vertices: usize,
    /// Largest vertex count for edge and total colourings.
    pub max_vertices_edge: usize,
    /// Largest edge count for edge and total colourings.
    pub max_edges: usize,
    /// Largest automorphism group listed element by element; larger groups
    /// are checked by an automorphism search at every node instead.
    pub group_limit: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 12,
            max_vertices_edge: 10,
            max_edges: 28,
            group_limit: 100_000,
            deadline: None,
        }
    }
}

impl Limits {
    fn check(&self, g: &Graph, kind: Kind) -> Result<()> {
        g.require_connected()?;
        match kind {
            Kind::Vertex if g.n() > self.max_vertices => Err(Error::SizeBound(format!(
                "{} vertices (bound {})",
                g.n(),
                self.max_vertices
            ))),
            Kind::Edge | Kind::Total if g.n() > self.max_vertices_edge => Err(Error::SizeBound(format!(
                "{} vertices (bound {} for {kind} colourings)",
                g.n(),
                self.max_vertices_edge
            ))),
            Kind::Edge | Kind::Total if g.m() > self.max_edges => Err(Error::SizeBound(format!(
                "{} edges (bound {})",
                g.m(),
                self.max_edges
            ))),
            _ => Ok(()),
        }
    }
}

/// The elements coloured by a colouring kind, their conflict graph and the
/// static search order.
struct Elements {
    kind: Kind,
    n: usize,
    count: usize,
    conflicts: Vec<Vec<usize>>,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Elements {
    fn new(g: &Graph, kind: Kind) -> Elements {
        let (n, m) = (g.n(), g.m());
        let edge_base = if kind == Kind::Edge { 0 } else { n };
        let count = match kind {
            Kind::Vertex => n,
            Kind::Edge => m,
            Kind::Total => n + m,
        };
        let mut conflicts = vec![Vec::new(); count];
        if kind.has_vertices() {
            for (u, v) in g.edges() {
                conflicts[u].push(v);
                conflicts[v].push(u);
            }
        }
        if kind.has_edges() {
            for v in 0..n {
                let inc: Vec<usize> = g.incident_edges(v).collect();
                for &a in &inc {
                    for &b in &inc {
                        if a != b {
                            conflicts[edge_base + a].push(edge_base + b);
                        }
                    }
                    if kind == Kind::Total {
                        conflicts[v].push(n + a);
                        conflicts[n + a].push(v);
                    }
                }
            }
        }
        for c in &mut conflicts {
            c.sort_unstable();
            c.dedup();
        }
        // BFS over the conflict graph from the first element of largest degree.
        let mut order = Vec::with_capacity(count);
        let mut seen = vec![false; count];
        while order.len() < count {
            let start = (0..count)
                .filter(|&e| !seen[e])
                .max_by_key(|&e| (conflicts[e].len(), std::cmp::Reverse(e)))
                .expect("unvisited element");
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                order.push(e);
                for &f in &conflicts[e] {
                    if !seen[f] {
                        seen[f] = true;
                        queue.push_back(f);
                    }
                }
            }
        }
        let mut pos = vec![0; count];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        Elements {
            kind,
            n,
            count,
            conflicts,
            order,
            pos,
        }
    }

    /// The action of a vertex automorphism on the elements.
    fn act(&self, g: &Graph, p: &Permutation) -> Vec<usize> {
        match self.kind {
            Kind::Vertex => p.image.clone(),
            Kind::Edge => p.on_edges(g),
            Kind::Total => {
                let mut img = p.image.clone();
                img.extend(p.on_edges(g).into_iter().map(|f| self.n + f));
                img
            }
        }
    }

    fn to_colouring(&self, colours: &[u32]) -> Colouring {
        let c: Vec<Colour> = colours.iter().map(|&x| x + 1).collect();
        match self.kind {
            Kind::Vertex => Colouring::vertex(c),
            Kind::Edge => Colouring::edge(c),
            Kind::Total => Colouring::total(c[..self.n].to_vec(), c[self.n..].to_vec()),
        }
    }
}

/// How a search recognises colourings preserved by a non-trivial automorphism.
enum Symmetry<'g> {
    /// For each position, the moved pairs of every automorphism whose last
    /// moved element sits at that position.
    Listed(Vec<Vec<Vec<(u32, u32)>>>),
    /// Group too large to list: run an automorphism search in which every
    /// unassigned element is fixed.
    Searched(&'g Graph),
}

const UNSET: u32 = u32::MAX;

impl Symmetry<'_> {
    fn build<'g>(g: &'g Graph, el: &Elements, limit: usize) -> Result<Symmetry<'g>> {
        let grp = aut_group(g, None);
        let Some(all) = enumerate_group(g.n(), &grp.generators, limit) else {
            return Ok(Symmetry::Searched(g));
        };
        Symmetry::listed(g, el, &all)
    }

    fn listed<'g>(g: &'g Graph, el: &Elements, all: &[Permutation]) -> Result<Symmetry<'g>> {
        let mut buckets = vec![Vec::new(); el.count];
        for p in all.iter().filter(|p| !p.is_identity()) {
            let img = el.act(g, p);
            let moved: Vec<(u32, u32)> = (0..el.count)
                .filter(|&e| img[e] != e)
                .map(|e| (e as u32, img[e] as u32))
                .collect();
            let Some(last) = moved.iter().map(|&(e, _)| el.pos[e as usize]).max() else {
                return Err(Error::NoDistinguishingColouring(format!(
                    "a non-identity automorphism fixes every {} element",
                    el.kind
                )));
            };
            buckets[last].push(moved);
        }
        Ok(Symmetry::Listed(buckets))
    }

    fn violated(&self, el: &Elements, t: usize, colour: &[u32], deadline: Option<Instant>) -> Result<bool> {
        match self {
            Symmetry::Listed(buckets) => Ok(buckets[t].iter().any(|moved| {
                moved
                    .iter()
                    .all(|&(a, b)| colour[a as usize] == colour[b as usize])
            })),
            Symmetry::Searched(g) => {
                // Unassigned elements get private colours so they stay fixed.
                let mapped: Vec<Colour> = colour
                    .iter()
                    .enumerate()
                    .map(|(e, &c)| if c == UNSET { 1_000_000 + e as Colour } else { c })
                    .collect();
                let c = match el.kind {
                    Kind::Vertex => Colouring::vertex(mapped),
                    Kind::Edge => Colouring::edge(mapped),
                    Kind::Total => Colouring::total(mapped[..el.n].to_vec(), mapped[el.n..].to_vec()),
                };
                let s = Structure::new(g, Some(&c), &|_| 0);
                Ok(s.first_automorphism(deadline)?.is_some())
            }
        }
    }
}

struct Solver<'a> {
    el: &'a Elements,
    k: u32,
    proper: bool,
    sym: Option<&'a Symmetry<'a>>,
    colour: Vec<u32>,
    deadline: Option<Instant>,
    nodes: u64,
}

impl Solver<'_> {
    fn run(&mut self, t: usize, used: u32) -> Result<bool> {
        if t == self.el.count {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::BudgetExhausted);
                }
            }
        }
        let e = self.el.order[t];
        for c in 0..(used + 1).min(self.k) {
            if self.proper && self.el.conflicts[e].iter().any(|&f| self.colour[f] == c) {
                continue;
            }
            self.colour[e] = c;
            if let Some(sym) = self.sym {
                if sym.violated(self.el, t, &self.colour, self.deadline)? {
                    continue;
                }
            }
            if self.run(t + 1, used.max(c + 1))? {
                return Ok(true);
            }
        }
        self.colour[e] = UNSET;
        Ok(false)
    }
}

fn solve(el: &Elements, k: usize, proper: bool, sym: Option<&Symmetry<'_>>, limits: &Limits) -> Result<Option<Colouring>> {
    let mut s = Solver {
        el,
        k: k as u32,
        proper,
        sym,
        colour: vec![UNSET; el.count],
        deadline: limits.deadline,
        nodes: 0,
    };
    Ok(if s.run(0, 0)? {
        Some(el.to_colouring(&s.colour))
    } else {
        None
    })
}

/// Maximum matching size of the subgraph induced by every vertex subset.
fn matching_table(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).fold(0u32, |a, w| a | 1 << w))
        .collect();
    let mut f = vec![0u8; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = f[rest];
        let mut cand = adj[v] as usize & rest;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            best = best.max(1 + f[rest & !(1 << u)]);
        }
        f[mask] = best;
    }
    f
}

fn clique_number(g: &Graph) -> usize {
    fn grow(adj: &[u32], cand: u32, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            grow(adj, c & adj[v], size + 1, best);
        }
    }
    let adj: Vec<u32> = (0..g.n())
        .map(|v| g.neighbours(v).fold(0u32, |a, w| a | 1 << w))
        .collect();
    let mut best = 0;
    grow(&adj, ((1u64 << g.n()) - 1) as u32, 0, &mut best);
    best
}

fn independence_number(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut complement = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if edges.binary_search(&(u, v)).is_err() {
                complement.push((u, v));
            }
        }
    }
    clique_number(&Graph::new(g.n(), &complement).expect("complement is simple"))
}

/// A lower bound on the proper chromatic number of the given kind.
fn chromatic_lower_bound(g: &Graph, kind: Kind) -> usize {
    let (n, m) = (g.n(), g.m());
    match kind {
        Kind::Vertex => {
            let alpha = independence_number(g).max(1);
            clique_number(g).max(n.div_ceil(alpha)).max(1)
        }
        Kind::Edge => {
            let nu = matching_table(g)[(1 << n) - 1] as usize;
            g.max_degree().max(if nu == 0 { 0 } else { m.div_ceil(nu) })
        }
        Kind::Total => {
            let f = matching_table(g);
            let full = (1usize << n) - 1;
            let adj: Vec<usize> = (0..n)
                .map(|v| g.neighbours(v).fold(0usize, |a, w| a | 1 << w))
                .collect();
            // A colour class is an independent set plus a matching avoiding it.
            let mut largest = 1;
            for set in 0..=full {
                let independent = (0..n).all(|v| set >> v & 1 == 0 || adj[v] & set == 0);
                if independent {
                    largest = largest.max(set.count_ones() as usize + f[full & !set] as usize);
                }
            }
            (g.max_degree() + 1).max((n + m).div_ceil(largest))
        }
    }
}

/// An optimal value with a witnessing colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub value: usize,
    pub certificate: Colouring,
}

fn empty_certificate(kind: Kind, g: &Graph) -> Colouring {
    match kind {
        Kind::Vertex => Colouring::vertex(vec![1; g.n()]),
        Kind::Edge => Colouring::edge(Vec::new()),
        Kind::Total => Colouring::total(vec![1; g.n()], Vec::new()),
    }
}

/// Minimum number of colours in a proper colouring of the given kind.
pub fn proper_chromatic(g: &Graph, kind: Kind, limits: &Limits) -> Result<Certified> {
    limits.check(g, kind)?;
    let el = Elements::new(g, kind);
    if el.count == 0 {
        return Ok(Certified {
            value: 0,
            certificate: empty_certificate(kind, g),
        });
    }
    let mut k = chromatic_lower_bound(g, kind);
    loop {
        if let Some(c) = solve(&el, k, true, None, limits)? {
            return Ok(Certified {
                value: k,
                certificate: c,
            });
        }
        k += 1;
    }
}

/// Minimum number of colours in a distinguishing colouring of the given kind,
/// proper if required. Rigid graphs get 1 for non-proper kinds, so every
/// value is at least 1 once there is something to colour.
pub fn distinguishing_value(g: &Graph, kind: Kind, proper: bool, limits: &Limits) -> Result<Certified> {
    let start = if proper {
        proper_chromatic(g, kind, limits)?.value
    } else {
        1
    };
    distinguishing_from(g, kind, proper, start, limits)
}

/// As [`distinguishing_value`], starting the search at `start` colours, which
/// must be a lower bound.
fn distinguishing_from(g: &Graph, kind: Kind, proper: bool, start: usize, limits: &Limits) -> Result<Certified> {
    limits.check(g, kind)?;
    let el = Elements::new(g, kind);
    let sym = Symmetry::build(g, &el, limits.group_limit)?;
    if el.count == 0 {
        return Ok(Certified {
            value: 0,
            certificate: empty_certificate(kind, g),
        });
    }
    for k in start.max(1)..=el.count {
        if let Some(c) = solve(&el, k, proper, Some(&sym), limits)? {
            return Ok(Certified {
                value: k,
                certificate: c,
            });
        }
    }
    Err(Error::NoDistinguishingColouring(format!(
        "even {} distinct colours leave a symmetry",
        el.count
    )))
}

/// Minimum number of colours in a proper vertex colouring of a truncation
/// that no non-identity automorphism fixing the boundary pointwise preserves.
///
/// The boundary stabiliser is listed, and the vertices it moves are coloured
/// first; the rest of the search only has to extend properly.
pub fn pointwise_proper_distinguishing(t: &Truncation, limits: &Limits) -> Result<Certified> {
    let g = t.graph();
    g.require_connected()?;
    let mut fixed = vec![0 as Colour; g.n()];
    for (i, b) in t.boundary().into_iter().enumerate() {
        fixed[b] = i as Colour + 1;
    }
    let grp = aut_group(g, Some(&fixed));
    let all = enumerate_group(g.n(), &grp.generators, limits.group_limit).ok_or_else(|| {
        Error::SizeBound(format!("the boundary stabiliser has more than {} elements", limits.group_limit))
    })?;
    let mut el = Elements::new(g, Kind::Vertex);
    let mut moved = vec![false; g.n()];
    for p in &all {
        for v in p.support() {
            moved[v] = true;
        }
    }
    el.order.sort_by_key(|&v| !moved[v]);
    for (i, &v) in el.order.iter().enumerate() {
        el.pos[v] = i;
    }
    let sym = Symmetry::listed(g, &el, &all)?;
    let start = if g.m() == 0 { 1 } else { 2 };
    for k in start..=g.n() {
        if let Some(c) = solve(&el, k, true, Some(&sym), limits)? {
            return Ok(Certified {
                value: k,
                certificate: c,
            });
        }
    }
    Err(Error::NoDistinguishingColouring(
        "even distinct colours on every vertex leave a symmetry".into(),
    ))
}

/// The invariants reported per graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    D,
    DPrime,
    DDouble,
    Chi,
    ChiPrime,
    ChiDouble,
    ChiD,
    ChiPrimeD,
    ChiDoubleD,
    Motion,
}

impl Invariant {
    pub const ALL: [Invariant; 10] = [
        Invariant::D,
        Invariant::DPrime,
        Invariant::DDouble,
        Invariant::Chi,
        Invariant::ChiPrime,
        Invariant::ChiDouble,
        Invariant::ChiD,
        Invariant::ChiPrimeD,
        Invariant::ChiDoubleD,
        Invariant::Motion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::D => "D",
            Invariant::DPrime => "D'",
            Invariant::DDouble => "D''",
            Invariant::Chi => "chi",
            Invariant::ChiPrime => "chi'",
            Invariant::ChiDouble => "chi''",
            Invariant::ChiD => "chi_D",
            Invariant::ChiPrimeD => "chi'_D",
            Invariant::ChiDoubleD => "chi''_D",
            Invariant::Motion => "motion",
        }
    }

    /// Colouring kind and properness for the colouring invariants.
    pub fn colouring_kind(self) -> Option<(Kind, bool)> {
        Some(match self {
            Invariant::D => (Kind::Vertex, false),
            Invariant::DPrime => (Kind::Edge, false),
            Invariant::DDouble => (Kind::Total, false),
            Invariant::Chi => (Kind::Vertex, true),
            Invariant::ChiPrime => (Kind::Edge, true),
            Invariant::ChiDouble => (Kind::Total, true),
            Invariant::ChiD => (Kind::Vertex, true),
            Invariant::ChiPrimeD => (Kind::Edge, true),
            Invariant::ChiDoubleD => (Kind::Total, true),
            Invariant::Motion => return None,
        })
    }

    pub fn is_distinguishing(self) -> bool {
        matches!(
            self,
            Invariant::D
                | Invariant::DPrime
                | Invariant::DDouble
                | Invariant::ChiD
                | Invariant::ChiPrimeD
                | Invariant::ChiDoubleD
        )
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One report entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", untagged)]
pub enum Entry {
    Value(usize),
    Status(Status),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Motion of a graph whose only automorphism is the identity.
    Rigid,
    /// No colouring of this kind is distinguishing (a single edge).
    Undefined,
    /// The computation hit a bound; the reason is recorded.
    Missing { reason: String },
}

impl Entry {
    pub fn value(&self) -> Option<usize> {
        match self {
            Entry::Value(v) => Some(*v),
            Entry::Status(_) => None,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Value(v) => write!(f, "{v}"),
            Entry::Status(Status::Rigid) => f.write_str("rigid"),
            Entry::Status(Status::Undefined) => f.write_str("undef"),
            Entry::Status(Status::Missing { .. }) => f.write_str("?"),
        }
    }
}

/// All invariants of one graph with their certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub values: BTreeMap<Invariant, Entry>,
    pub certificates: BTreeMap<Invariant, Colouring>,
}

impl InvariantReport {
    pub fn get(&self, inv: Invariant) -> Option<usize> {
        self.values.get(&inv).and_then(Entry::value)
    }

    /// Violations of the relations every report must satisfy.
    pub fn violations(&self, g: &Graph) -> Vec<String> {
        use Invariant::*;
        let mut out = Vec::new();
        let mut le = |a: Invariant, b: Invariant| {
            if let (Some(x), Some(y)) = (self.get(a), self.get(b)) {
                if x > y {
                    out.push(format!("{a} = {x} exceeds {b} = {y}"));
                }
            }
        };
        le(Chi, ChiD);
        le(ChiPrime, ChiPrimeD);
        le(ChiDouble, ChiDoubleD);
        le(D, ChiD);
        le(DPrime, ChiPrimeD);
        le(DDouble, ChiDoubleD);
        if let (Some(dd), Some(d)) = (self.get(DDouble), self.get(D)) {
            let bound = self.get(DPrime).map_or(d, |dp| d.max(dp));
            if dd > bound {
                out.push(format!("D'' = {dd} exceeds max(D, D') = {bound}"));
            }
        }
        for (&inv, c) in &self.certificates {
            let Some((_, proper)) = inv.colouring_kind() else { continue };
            if proper && !c.is_proper(g) {
                out.push(format!("certificate for {inv} is not proper"));
            }
            if inv.is_distinguishing() {
                match automorphisms::is_distinguishing(g, c) {
                    Ok(v) if v.is_distinguishing() => {}
                    _ => out.push(format!("certificate for {inv} is not distinguishing")),
                }
            }
            if let Some(v) = self.get(inv) {
                if c.num_colours() > v {
                    out.push(format!("certificate for {inv} uses more than {v} colours"));
                }
            }
        }
        out
    }

    /// The aligned text table header for [`InvariantReport::table_row`].
    pub fn table_header(name_width: usize) -> String {
        let mut s = format!("{:<name_width$} {:>3} {:>3} {:>3}", "graph", "n", "m", "Δ");
        for inv in Invariant::ALL {
            let _ = write!(s, " {:>7}", inv.name());
        }
        s
    }

    pub fn table_row(&self, name_width: usize) -> String {
        let mut s = format!(
            "{:<name_width$} {:>3} {:>3} {:>3}",
            self.graph, self.n, self.m, self.max_degree
        );
        for inv in Invariant::ALL {
            let cell = self.values.get(&inv).map_or("-".to_string(), Entry::to_string);
            let _ = write!(s, " {cell:>7}");
        }
        s
    }
}

/// Renders reports as an aligned table, one row per graph.
pub fn render_table(reports: &[InvariantReport]) -> String {
    let width = reports.iter().map(|r| r.graph.chars().count()).max().unwrap_or(5).max(5);
    let mut out = InvariantReport::table_header(width);
    out.push('\n');
    for r in reports {
        out.push_str(&r.table_row(width));
        out.push('\n');
    }
    out
}

/// Computes one invariant; `known` holds values computed earlier for the
/// same graph, used as lower bounds.
pub fn compute(g: &Graph, inv: Invariant, known: &BTreeMap<Invariant, Entry>, limits: &Limits) -> Result<(Entry, Option<Colouring>)> {
    use Invariant::*;
    if inv == Motion {
        return Ok((motion_entry(automorphisms::motion(g)?), None));
    }
    let (kind, proper) = inv.colouring_kind().expect("colouring invariant");
    let val = |i: Invariant| known.get(&i).and_then(Entry::value);
    let outcome = if !inv.is_distinguishing() {
        proper_chromatic(g, kind, limits)
    } else if proper {
        let (base, plain) = match kind {
            Kind::Vertex => (Chi, D),
            Kind::Edge => (ChiPrime, DPrime),
            Kind::Total => (ChiDouble, DDouble),
        };
        let start = match val(base) {
            Some(b) => b,
            None => proper_chromatic(g, kind, limits)?.value,
        };
        distinguishing_from(g, kind, true, start.max(val(plain).unwrap_or(1)), limits)
    } else {
        distinguishing_from(g, kind, false, 1, limits)
    };
    match outcome {
        Ok(c) => Ok((Entry::Value(c.value), Some(c.certificate))),
        Err(Error::NoDistinguishingColouring(_)) => Ok((Entry::Status(Status::Undefined), None)),
        Err(e) => Err(e),
    }
}

/// All ten invariants with certificates. Entries whose computation exceeds a
/// bound are marked missing. The report relations are checked before
/// returning; a violation is an internal error.
pub fn full_report(g: &Graph, name: &str, limits: &Limits) -> Result<InvariantReport> {
    g.require_connected()?;
    let mut report = InvariantReport {
        graph: name.to_string(),
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        values: BTreeMap::new(),
        certificates: BTreeMap::new(),
    };
    use Invariant::*;
    for inv in [Chi, ChiPrime, ChiDouble, D, DPrime, DDouble, ChiD, ChiPrimeD, ChiDoubleD, Motion] {
        match compute(g, inv, &report.values, limits) {
            Ok((entry, cert)) => {
                report.values.insert(inv, entry);
                if let Some(c) = cert {
                    report.certificates.insert(inv, c);
                }
            }
            Err(e @ (Error::SizeBound(_) | Error::BudgetExhausted)) => {
                report.values.insert(
                    inv,
                    Entry::Status(Status::Missing {
                        reason: e.to_string(),
                    }),
                );
            }
            Err(e) => return Err(e),
        }
    }
    let problems = report.violations(g);
    if !problems.is_empty() {
        return Err(Error::Certification(problems.join("; ")));
    }
    Ok(report)
}

/// Motion as a report entry.
pub fn motion_entry(m: Motion) -> Entry {
    match m {
        Motion::Rigid => Entry::Status(Status::Rigid),
        Motion::Moves(k) => Entry::Value(k),
    }
}
