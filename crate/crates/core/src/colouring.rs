//! Vertex, edge and total colourings as overlays on a [`Graph`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Colour = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vertex,
    Edge,
    Total,
}

impl Kind {
    pub fn has_vertices(self) -> bool {
        matches!(self, Kind::Vertex | Kind::Total)
    }

    pub fn has_edges(self) -> bool {
        matches!(self, Kind::Edge | Kind::Total)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Vertex => "vertex",
            Kind::Edge => "edge",
            Kind::Total => "total",
        })
    }
}

/// A colour assignment of the given kind. Edge colours are indexed by edge id.
///
/// `reserved` optionally names one colour with a special role, such as the
/// extra colour of a pinning construction or the black class of a
/// construction; it is rendered black in DOT output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_colours: Option<Vec<Colour>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_colours: Option<Vec<Colour>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reserved: Option<Colour>,
}

/// A pair of adjacent or incident elements sharing a colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conflict {
    Vertices(usize, usize),
    Edges(usize, usize),
    VertexEdge(usize, usize),
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conflict::Vertices(u, v) => write!(f, "adjacent vertices {u} and {v} share a colour"),
            Conflict::Edges(a, b) => write!(f, "incident edges {a} and {b} share a colour"),
            Conflict::VertexEdge(v, e) => write!(f, "vertex {v} and incident edge {e} share a colour"),
        }
    }
}

impl Colouring {
    pub fn vertex(colours: Vec<Colour>) -> Colouring {
        Colouring {
            kind: Kind::Vertex,
            vertex_colours: Some(colours),
            edge_colours: None,
            reserved: None,
        }
    }

    pub fn edge(colours: Vec<Colour>) -> Colouring {
        Colouring {
            kind: Kind::Edge,
            vertex_colours: None,
            edge_colours: Some(colours),
            reserved: None,
        }
    }

    pub fn total(vertex: Vec<Colour>, edge: Vec<Colour>) -> Colouring {
        Colouring {
            kind: Kind::Total,
            vertex_colours: Some(vertex),
            edge_colours: Some(edge),
            reserved: None,
        }
    }

    pub fn with_reserved(mut self, colour: Colour) -> Colouring {
        self.reserved = Some(colour);
        self
    }

    pub fn vertex_colours(&self) -> &[Colour] {
        self.vertex_colours.as_deref().unwrap_or(&[])
    }

    pub fn edge_colours(&self) -> &[Colour] {
        self.edge_colours.as_deref().unwrap_or(&[])
    }

    /// The set of colours that actually appear.
    pub fn palette(&self) -> BTreeSet<Colour> {
        self.vertex_colours()
            .iter()
            .chain(self.edge_colours())
            .copied()
            .collect()
    }

    pub fn num_colours(&self) -> usize {
        self.palette().len()
    }

    pub fn max_colour(&self) -> Option<Colour> {
        self.vertex_colours()
            .iter()
            .chain(self.edge_colours())
            .copied()
            .max()
    }

    /// Checks that the colouring covers exactly the elements of `g` its kind
    /// requires.
    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        let want_v = self.kind.has_vertices();
        let want_e = self.kind.has_edges();
        match (&self.vertex_colours, want_v) {
            (Some(c), true) if c.len() != g.n() => {
                return Err(Error::InvalidColouring(format!(
                    "{} vertex colours for {} vertices",
                    c.len(),
                    g.n()
                )))
            }
            (None, true) => return Err(Error::InvalidColouring("vertex colours missing".into())),
            (Some(_), false) => {
                return Err(Error::InvalidColouring(
                    "an edge colouring must not carry vertex colours".into(),
                ))
            }
            _ => {}
        }
        match (&self.edge_colours, want_e) {
            (Some(c), true) if c.len() != g.m() => Err(Error::InvalidColouring(format!(
                "{} edge colours for {} edges; edge id {} is uncoloured or unknown",
                c.len(),
                g.m(),
                c.len().min(g.m())
            ))),
            (None, true) => Err(Error::InvalidColouring("edge colours missing".into())),
            (Some(_), false) => Err(Error::InvalidColouring(
                "a vertex colouring must not carry edge colours".into(),
            )),
            _ => Ok(()),
        }
    }

    /// The first properness violation, if any.
    pub fn first_conflict(&self, g: &Graph) -> Option<Conflict> {
        let vc = self.vertex_colours();
        let ec = self.edge_colours();
        if self.kind.has_vertices() {
            for (u, v) in g.edges() {
                if vc[u] == vc[v] {
                    return Some(Conflict::Vertices(u, v));
                }
            }
        }
        if self.kind.has_edges() {
            for v in 0..g.n() {
                let mut inc: Vec<(Colour, usize)> =
                    g.incident_edges(v).map(|e| (ec[e], e)).collect();
                inc.sort_unstable();
                if let Some(w) = inc.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Some(Conflict::Edges(w[0].1, w[1].1));
                }
                if self.kind == Kind::Total {
                    if let Some(&(_, e)) = inc.iter().find(|&&(c, _)| c == vc[v]) {
                        return Some(Conflict::VertexEdge(v, e));
                    }
                }
            }
        }
        None
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.first_conflict(g).is_none()
    }

    /// Errors with the first conflict when the colouring is not proper.
    pub fn require_proper(&self, g: &Graph) -> Result<()> {
        self.check_domain(g)?;
        match self.first_conflict(g) {
            None => Ok(()),
            Some(c) => Err(Error::InvalidColouring(format!("not proper: {c}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edge_list(&[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn palette_is_exact() {
        let c = Colouring::total(vec![1, 5, 1], vec![2, 2]);
        assert_eq!(c.palette(), BTreeSet::from([1, 2, 5]));
        assert_eq!(c.num_colours(), 3);
    }

    #[test]
    fn domain_checks() {
        let g = p3();
        assert!(Colouring::vertex(vec![1, 2, 1]).check_domain(&g).is_ok());
        assert!(Colouring::vertex(vec![1, 2]).check_domain(&g).is_err());
        let err = Colouring::edge(vec![1]).check_domain(&g).unwrap_err();
        assert!(err.to_string().contains("edge id 1"));
    }

    #[test]
    fn properness() {
        let g = p3();
        assert!(Colouring::vertex(vec![1, 2, 1]).is_proper(&g));
        assert_eq!(
            Colouring::vertex(vec![1, 2, 2]).first_conflict(&g),
            Some(Conflict::Vertices(1, 2))
        );
        assert_eq!(
            Colouring::edge(vec![3, 3]).first_conflict(&g),
            Some(Conflict::Edges(0, 1))
        );
        assert_eq!(
            Colouring::total(vec![1, 2, 1], vec![3, 1]).first_conflict(&g),
            Some(Conflict::VertexEdge(2, 1))
        );
        assert!(Colouring::total(vec![1, 2, 1], vec![3, 3]).first_conflict(&g).is_some());
        assert!(Colouring::total(vec![1, 2, 1], vec![3, 0]).is_proper(&g));
    }

    #[test]
    fn json_shape() {
        let c = Colouring::vertex(vec![1, 2]).with_reserved(2);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"vertex","vertex_colours":[1,2],"reserved":2}"#);
        let back: Colouring = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
