//! Graph and colouring inputs: family strings, atlas ranges and JSON files.

use std::path::Path;

use serde_json::Value;

use crate::atlas;
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Instance};
use crate::graph::GraphJson;
use crate::truncation::TruncationJson;

/// Defaults filled into family strings that omit a trailing radius or seed.
#[derive(Clone, Copy, Debug, Default)]
pub struct Defaults {
    pub radius: Option<u64>,
    pub seed: Option<u64>,
}

/// A named input graph.
#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub instance: Instance,
}

/// Whether `src` names several graphs (an atlas range).
pub fn is_multi(src: &str) -> bool {
    src.trim().starts_with("atlas:")
}

/// Loads every graph named by `src`:
///
/// - `family:<name>(<params>)`
/// - `atlas:<n>` or `atlas:<lo>..<hi>`: all connected graphs on n vertices,
///   named `atlas:<n>#<index>`
/// - a path to a graph or truncation JSON file
pub fn load(src: &str, defaults: Defaults) -> Result<Vec<Named>> {
    load_relative(src, defaults, None)
}

/// As [`load`], resolving file paths against `base` when relative.
pub fn load_relative(src: &str, defaults: Defaults, base: Option<&Path>) -> Result<Vec<Named>> {
    let src = src.trim();
    if src.starts_with("family:") {
        let spec = FamilySpec::parse(src, defaults.radius, defaults.seed)?;
        return Ok(vec![Named {
            name: spec.to_string(),
            instance: spec.instantiate()?,
        }]);
    }
    if let Some(range) = src.strip_prefix("atlas:") {
        let (lo, hi) = parse_range(range)?;
        let mut out = Vec::new();
        for n in lo..=hi {
            for (i, g) in atlas::connected_graphs(n).into_iter().enumerate() {
                out.push(Named {
                    name: format!("atlas:{n}#{i}"),
                    instance: Instance::Finite(g),
                });
            }
        }
        return Ok(out);
    }
    let path = match base {
        Some(b) if Path::new(src).is_relative() => b.join(src),
        _ => Path::new(src).to_path_buf(),
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("cannot read '{}': {e}", path.display())))?;
    Ok(vec![Named {
        name: src.to_string(),
        instance: parse_graph_json(&text)?,
    }])
}

/// Loads exactly one graph.
pub fn load_one(src: &str, defaults: Defaults) -> Result<Named> {
    let mut all = load(src, defaults)?;
    if all.len() != 1 {
        return Err(Error::Parse(format!("'{src}' names {} graphs, expected one", all.len())));
    }
    Ok(all.remove(0))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad atlas size '{t}'")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi || hi > atlas::MAX_ATLAS_ORDER {
        return Err(Error::Parse(format!(
            "atlas range '{s}' must satisfy 1 ≤ lo ≤ hi ≤ {}",
            atlas::MAX_ATLAS_ORDER
        )));
    }
    Ok((lo, hi))
}

/// Parses graph JSON, or truncation JSON when `root` and `radius` are present.
pub fn parse_graph_json(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    if v.get("root").is_some() || v.get("radius").is_some() {
        let t: TruncationJson = serde_json::from_value(v).map_err(|e| Error::Parse(format!("truncation JSON: {e}")))?;
        Ok(Instance::Truncated(t.to_truncation()?))
    } else {
        let g: GraphJson = serde_json::from_value(v).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        Ok(Instance::Finite(g.to_graph()?))
    }
}

/// Reads a colouring JSON file.
pub fn load_colouring(path: &Path) -> Result<Colouring> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read '{}': {e}", path.display())))?;
    parse_colouring_json(&text)
}

/// Parses colouring JSON: `{"kind": "vertex", "vertex_colours": [...]}` and
/// so on.
pub fn parse_colouring_json(text: &str) -> Result<Colouring> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("colouring JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources() {
        let d = Defaults { radius: Some(5), seed: Some(3) };
        let g = load_one("family:cycle(6)", d).unwrap();
        assert_eq!(g.name, "family:cycle(6)");
        assert_eq!(g.instance.graph().n(), 6);
        let t = load_one("family:regular_tree(3)", d).unwrap();
        assert_eq!(t.name, "family:regular_tree(3,5)");
        assert_eq!(t.instance.truncation().unwrap().radius(), 5);
        assert_eq!(load("atlas:3..4", d).unwrap().len(), 2 + 6);
        assert!(matches!(load("atlas:0", d), Err(Error::Parse(_))));
        assert!(matches!(load("/nonexistent/graph.json", d), Err(Error::Parse(_))));
    }

    #[test]
    fn json_inputs() {
        let g = parse_graph_json(r#"{"n": 3, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(g, Instance::Finite(_)));
        let t = parse_graph_json(r#"{"n": 3, "edges": [[0,1],[1,2]], "root": 0, "radius": 2}"#).unwrap();
        assert!(matches!(t, Instance::Truncated(_)));
        assert!(matches!(parse_graph_json("{\"n\": 2"), Err(Error::Parse(_))));
        assert!(parse_graph_json(r#"{"n": 2, "edges": [[0,5]]}"#).is_err());
        let c = parse_colouring_json(r#"{"kind": "vertex", "vertex_colours": [1,2,2]}"#).unwrap();
        assert_eq!(c.vertex_colours(), &[1, 2, 2]);
        assert!(parse_colouring_json(r#"{"kind": "purple"}"#).is_err());
    }
}
