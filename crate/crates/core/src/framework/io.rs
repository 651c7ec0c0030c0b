//! JSON file formats for motifs and finite frameworks.
//!
//! Motif: `{"dimension": d, "lattice": [[..] × d], "vertices": [[..] × |F_v|],
//! "edges": [{"i": .., "j": .., "offset": [..]}]}`, vertex coordinates
//! lattice-fractional.
//!
//! Finite framework: `{"vertices": [[coords]], "edges": [[i, j]]}`.
//!
//! Unknown keys are rejected in both formats.

use serde::{Deserialize, Serialize};

use super::catalog::CatalogEntry;
use super::{FiniteFramework, FrameworkError, Graph, Motif, MotifEdge};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MotifFile {
    dimension: usize,
    lattice: Vec<Vec<f64>>,
    vertices: Vec<Vec<f64>>,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    i: usize,
    j: usize,
    offset: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<Vec<f64>>,
    edges: Vec<[usize; 2]>,
}

fn parse_err(e: serde_json::Error) -> FrameworkError {
    FrameworkError::Parse(e.to_string())
}

pub fn motif_from_json(text: &str) -> Result<Motif, FrameworkError> {
    let file: MotifFile = serde_json::from_str(text).map_err(parse_err)?;
    let edges = file.edges.into_iter().map(|e| MotifEdge { i: e.i, j: e.j, offset: e.offset }).collect();
    Motif::new(file.dimension, &file.lattice, &file.vertices, edges)
}

pub fn motif_to_json(motif: &Motif) -> String {
    let file = MotifFile {
        dimension: motif.dimension(),
        lattice: motif.lattice_basis(),
        vertices: motif.fractional().iter().map(|f| f.iter().copied().collect()).collect(),
        edges: motif
            .edges()
            .iter()
            .map(|e| EdgeRecord { i: e.i, j: e.j, offset: e.offset.clone() })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("motif serialises")
}

pub fn framework_from_json(text: &str) -> Result<FiniteFramework, FrameworkError> {
    let file: GraphFile = serde_json::from_str(text).map_err(parse_err)?;
    let graph = Graph::new(file.vertices.len(), file.edges.iter().map(|e| (e[0], e[1])).collect())?;
    FiniteFramework::from_points(graph, &file.vertices)
}

pub fn framework_to_json(fw: &FiniteFramework) -> String {
    let file = GraphFile {
        vertices: fw.placement().iter().map(|p| p.iter().copied().collect()).collect(),
        edges: fw.graph().edges().iter().map(|&(i, j)| [i, j]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("framework serialises")
}

/// Parses either format; a document with a `dimension` key is read as a motif.
pub fn entry_from_json(text: &str) -> Result<CatalogEntry, FrameworkError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    if value.get("dimension").is_some() {
        motif_from_json(text).map(CatalogEntry::Motif)
    } else {
        framework_from_json(text).map(CatalogEntry::Framework)
    }
}

pub fn entry_to_json(entry: &CatalogEntry) -> String {
    match entry {
        CatalogEntry::Motif(m) => motif_to_json(m),
        CatalogEntry::Framework(f) => framework_to_json(f),
    }
}
