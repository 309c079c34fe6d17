//! Graphviz DOT export.
//!
//! Colours map to the 12-colour `set312` scheme, wrapping around; the
//! reserved colour of a colouring is drawn black.

use std::fmt::Write as _;

use crate::colouring::{Colour, Colouring};
use crate::graph::Graph;

fn paint(c: Colour, reserved: Option<Colour>) -> String {
    if Some(c) == reserved {
        "black".into()
    } else {
        ((c.saturating_sub(1) % 12) + 1).to_string()
    }
}

/// DOT source for `g`, with the vertex and edge colours of `c` if given.
pub fn to_dot(g: &Graph, c: Option<&Colouring>) -> String {
    let vc = c.and_then(|c| c.vertex_colours.as_deref());
    let ec = c.and_then(|c| c.edge_colours.as_deref());
    let reserved = c.and_then(|c| c.reserved);
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled, colorscheme=set312];\n  edge [colorscheme=set312];\n");
    for v in 0..g.n() {
        match vc.map(|vc| vc[v]) {
            Some(x) => {
                let fill = paint(x, reserved);
                let font = if fill == "black" { ", fontcolor=white" } else { "" };
                let _ = writeln!(out, "  {v} [fillcolor={fill}, label=\"{v}:{x}\"{font}];");
            }
            None => {
                let _ = writeln!(out, "  {v} [fillcolor=white];");
            }
        }
    }
    for (e, (u, v)) in g.edges().enumerate() {
        match ec.map(|ec| ec[e]) {
            Some(x) => {
                let _ = writeln!(out, "  {u} -- {v} [color={}, penwidth=2, label=\"{x}\"];", paint(x, reserved));
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserved_colour_is_black() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let c = Colouring::vertex(vec![1, 3, 13]).with_reserved(3);
        let dot = to_dot(&g, Some(&c));
        assert!(dot.contains("0 [fillcolor=1,"));
        assert!(dot.contains("1 [fillcolor=black,"));
        assert!(dot.contains("2 [fillcolor=1,"));
        assert!(dot.contains("0 -- 1;"));
        let e = Colouring::edge(vec![2, 14]);
        let dot = to_dot(&g, Some(&e));
        assert!(dot.contains("0 -- 1 [color=2,"));
        assert!(dot.contains("1 -- 2 [color=2,"));
        assert!(to_dot(&g, None).starts_with("graph G {"));
    }
}
