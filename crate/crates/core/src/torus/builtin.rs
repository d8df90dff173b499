use super::{parse_torus_graph, ToroidalGraph};
use crate::error::{Error, Result};

/// Square lattice: one vertex, one horizontal and one vertical edge. Both
/// checkerboard graphs of the square weave look like this.
pub const WEAVE: &str = r#"{
  "vertices": [{"id": "v", "pos": [0.5, 0.5]}],
  "edges": [
    {"u": "v", "v": "v", "shift": [1, 0]},
    {"u": "v", "v": "v", "shift": [0, 1]}
  ]
}"#;

/// Triangular lattice in sheared coordinates; its dual is the hexagonal
/// lattice. These are the checkerboard graphs of the triaxial link.
pub const TRIAXIAL: &str = r#"{
  "vertices": [{"id": "v", "pos": [0.5, 0.5]}],
  "edges": [
    {"u": "v", "v": "v", "shift": [1, 0]},
    {"u": "v", "v": "v", "shift": [0, 1]},
    {"u": "v", "v": "v", "shift": [1, -1]}
  ]
}"#;

pub fn builtin_names() -> &'static [&'static str] {
    &["weave", "triaxial"]
}

pub fn builtin(name: &str) -> Result<ToroidalGraph> {
    match name {
        "weave" => parse_torus_graph(WEAVE),
        "triaxial" => parse_torus_graph(TRIAXIAL),
        other => Err(Error::InvalidArgument(format!("unknown builtin `{other}`"))),
    }
}

/// Resolves `builtin:<name>` or reads a graph file.
pub fn load_graph(source: &str) -> Result<ToroidalGraph> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{source}`: {e}")))?;
    parse_torus_graph(&text)
}
