//! Built-in motifs and finite frameworks.
//!
//! Fixed entries live as JSON under `data/` in the formats of [`super::io`];
//! `quadgrid` and `trapezium-strip` are generated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::io::{framework_from_json, motif_from_json};
use super::{FiniteFramework, FrameworkError, Graph, Motif, MotifEdge};

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogEntry {
    Motif(Motif),
    Framework(FiniteFramework),
}

impl CatalogEntry {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogEntry::Motif(_) => "motif",
            CatalogEntry::Framework(_) => "framework",
        }
    }

    pub fn into_motif(self, name: &str) -> Result<Motif, FrameworkError> {
        match self {
            CatalogEntry::Motif(m) => Ok(m),
            CatalogEntry::Framework(_) => Err(FrameworkError::WrongKind(name.to_string(), "framework", "motif")),
        }
    }

    pub fn into_framework(self, name: &str) -> Result<FiniteFramework, FrameworkError> {
        match self {
            CatalogEntry::Framework(f) => Ok(f),
            CatalogEntry::Motif(_) => Err(FrameworkError::WrongKind(name.to_string(), "motif", "framework")),
        }
    }
}

const MOTIFS: &[(&str, &str)] = &[
    ("grid2", include_str!("../../data/grid2.json")),
    ("grid2-min", include_str!("../../data/grid2-min.json")),
    ("grid2-reduced", include_str!("../../data/grid2-reduced.json")),
    ("kagome", include_str!("../../data/kagome.json")),
    ("honeycomb3", include_str!("../../data/honeycomb3.json")),
    ("honeycomb4", include_str!("../../data/honeycomb4.json")),
    ("kagome-net", include_str!("../../data/kagome-net.json")),
    ("squares", include_str!("../../data/squares.json")),
];

const FRAMEWORKS: &[(&str, &str)] = &[
    ("triangle", include_str!("../../data/triangle.json")),
    ("square", include_str!("../../data/square.json")),
    ("k4", include_str!("../../data/k4.json")),
    ("braced-hexagon", include_str!("../../data/braced-hexagon.json")),
];

/// Names accepted by [`catalog`], motifs first.
pub fn names() -> Vec<&'static str> {
    let mut out: Vec<&str> = MOTIFS.iter().map(|(n, _)| *n).collect();
    out.push("quadgrid");
    out.extend(FRAMEWORKS.iter().map(|(n, _)| *n));
    out.push("trapezium-strip");
    out
}

/// Names that produce motifs.
pub fn motif_names() -> Vec<&'static str> {
    let mut out: Vec<&str> = MOTIFS.iter().map(|(n, _)| *n).collect();
    out.push("quadgrid");
    out
}

/// Raw JSON of a fixed entry, if `name` is one.
pub fn source(name: &str) -> Option<&'static str> {
    MOTIFS.iter().chain(FRAMEWORKS).find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn catalog(name: &str, seed: Option<u64>) -> Result<CatalogEntry, FrameworkError> {
    if let Some((_, text)) = MOTIFS.iter().find(|(n, _)| *n == name) {
        return motif_from_json(text).map(CatalogEntry::Motif);
    }
    if let Some((_, text)) = FRAMEWORKS.iter().find(|(n, _)| *n == name) {
        return framework_from_json(text).map(CatalogEntry::Framework);
    }
    match name {
        "quadgrid" => {
            let seed = seed.ok_or_else(|| FrameworkError::MissingSeed(name.to_string()))?;
            quadgrid(seed).map(CatalogEntry::Motif)
        }
        "trapezium-strip" => trapezium_strip(2.0, 1.0, 1.0, 4).map(CatalogEntry::Framework),
        _ => Err(FrameworkError::UnknownName(name.to_string())),
    }
}

/// Shortcut for entries known to be motifs.
pub fn motif(name: &str, seed: Option<u64>) -> Result<Motif, FrameworkError> {
    catalog(name, seed)?.into_motif(name)
}

/// Largest per-coordinate perturbation used by [`quadgrid`], in units of 10⁻⁶.
pub const QUADGRID_MAX_PERTURBATION: u32 = 80_000;

/// The eight-edge quadrilateral grid with each vertex moved by a seeded
/// rational vector `(k₁, k₂)/10⁶`, `0 ≤ kᵢ ≤ 80 000`.
///
/// Edge list and offsets are those of `grid2`; the perturbation keeps every
/// vertex inside the unit cell and well within a third of the edge length.
pub fn quadgrid(seed: u64) -> Result<Motif, FrameworkError> {
    let base = motif("grid2", None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fractional: Vec<Vec<f64>> = base
        .fractional()
        .iter()
        .map(|f| {
            f.iter()
                .map(|&x| x + rng.gen_range(0..=QUADGRID_MAX_PERTURBATION) as f64 / 1e6)
                .collect()
        })
        .collect();
    Motif::new(2, &base.lattice_basis(), &fractional, base.edges().to_vec())
}

/// Vertical bars alternating in height `a`, `b` at spacing `s`, bases on the
/// x-axis, tops joined left to right and bases joined left to right.
///
/// `cells` four-bar cells use `cells + 1` bars. Vertex `2k` is the base of bar
/// `k`, vertex `2k + 1` its top.
pub fn trapezium_strip(a: f64, b: f64, spacing: f64, cells: usize) -> Result<FiniteFramework, FrameworkError> {
    if cells == 0 || !(a > 0.0 && b > 0.0 && spacing > 0.0) {
        return Err(FrameworkError::Parse(format!(
            "trapezium strip needs positive a, b, spacing and at least one cell (got a={a}, b={b}, s={spacing}, cells={cells})"
        )));
    }
    let bars = cells + 1;
    let mut points = Vec::with_capacity(2 * bars);
    for k in 0..bars {
        let h = if k % 2 == 0 { a } else { b };
        points.push(vec![k as f64 * spacing, 0.0]);
        points.push(vec![k as f64 * spacing, h]);
    }
    let mut edges = Vec::new();
    for k in 0..bars {
        edges.push((2 * k, 2 * k + 1));
    }
    for k in 0..cells {
        edges.push((2 * k, 2 * k + 2));
        edges.push((2 * k + 1, 2 * k + 3));
    }
    FiniteFramework::from_points(Graph::new(2 * bars, edges)?, &points)
}

/// Helper for tests and tools that need a motif edge list without JSON.
pub fn edges_from_tuples(list: &[(usize, usize, &[i64])]) -> Vec<MotifEdge> {
    list.iter().map(|&(i, j, o)| MotifEdge::new(i, j, o)).collect()
}
