//! Fixture drawings, the glue-at-a-vertex family and random generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::drawing::{
    validate, CombinatorialDrawing, CrossingRecord, EdgeId, HalfEdge, Mode, StructuralError,
    VertexId,
};
use crate::format;
use crate::skeleton::{regions_unchecked, Corner, Region};

const FIG1: &str = include_str!("../fixtures/fig1.1pd");
const K6: &str = include_str!("../fixtures/k6.1pd");
const K4_PLANAR: &str = include_str!("../fixtures/k4_planar.1pd");
const K4_CROSSED: &str = include_str!("../fixtures/k4_crossed.1pd");
const C4: &str = include_str!("../fixtures/c4.1pd");
const OCTAHEDRON: &str = include_str!("../fixtures/octahedron.1pd");

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("copy count must be at least 1")]
    NoCopies,
    #[error("hub {0} is not a vertex of the base drawing")]
    UnknownHub(VertexId),
    #[error("base drawing must be an accepted simple drawing: {0}")]
    BadBase(String),
    #[error("region must be uncrossed")]
    CrossedRegion,
    #[error(transparent)]
    Structural(#[from] StructuralError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// 24 vertices, 7-regular, 18 crossings.
    Fig1,
    K4Planar,
    /// Square with both diagonals crossing inside.
    K4Crossed,
    K6,
    C4,
    Octahedron,
    Stacked(usize),
}

impl Fixture {
    pub const NAMED: [Fixture; 6] = [
        Fixture::Fig1,
        Fixture::K4Planar,
        Fixture::K4Crossed,
        Fixture::K6,
        Fixture::C4,
        Fixture::Octahedron,
    ];

    /// Source text of fixtures shipped as files.
    pub fn document(&self) -> Option<&'static str> {
        match self {
            Fixture::Fig1 => Some(FIG1),
            Fixture::K4Planar => Some(K4_PLANAR),
            Fixture::K4Crossed => Some(K4_CROSSED),
            Fixture::K6 => Some(K6),
            Fixture::C4 => Some(C4),
            Fixture::Octahedron => Some(OCTAHEDRON),
            Fixture::Stacked(_) => None,
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Fig1 => f.write_str("fig1"),
            Fixture::K4Planar => f.write_str("k4_planar"),
            Fixture::K4Crossed => f.write_str("k4_crossed"),
            Fixture::K6 => f.write_str("k6"),
            Fixture::C4 => f.write_str("c4"),
            Fixture::Octahedron => f.write_str("octahedron"),
            Fixture::Stacked(k) => write!(f, "stacked({k})"),
        }
    }
}

impl FromStr for Fixture {
    type Err = ConstructionError;

    /// Accepts the names above; the stacked family as `stacked(N)` or
    /// `stacked:N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConstructionError::UnknownFixture(s.to_string());
        Ok(match s {
            "fig1" => Fixture::Fig1,
            "k4_planar" => Fixture::K4Planar,
            "k4_crossed" => Fixture::K4Crossed,
            "k6" => Fixture::K6,
            "c4" => Fixture::C4,
            "octahedron" => Fixture::Octahedron,
            _ => {
                let depth = s
                    .strip_prefix("stacked(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("stacked:"))
                    .ok_or_else(unknown)?;
                Fixture::Stacked(depth.parse().map_err(|_| unknown())?)
            }
        })
    }
}

pub fn fixture(which: Fixture) -> Result<CombinatorialDrawing, ConstructionError> {
    match which.document() {
        Some(text) => Ok(format::parse(text).expect("shipped fixture parses")),
        None => match which {
            Fixture::Stacked(depth) => Ok(stacked_triangulation(depth)),
            _ => unreachable!("named fixtures have documents"),
        },
    }
}

pub fn fixture_by_name(name: &str) -> Result<CombinatorialDrawing, ConstructionError> {
    fixture(name.parse()?)
}

/// The cycle `0 - 1 - ... - (n-1) - 0` drawn in the plane.
pub fn cycle(n: u32) -> CombinatorialDrawing {
    let edges = (0..n).map(|i| (EdgeId(i), (VertexId(i), VertexId((i + 1) % n))));
    let rotations = (0..n).map(|i| {
        (
            VertexId(i),
            vec![
                HalfEdge::new(EdgeId(i), 0),
                HalfEdge::new(EdgeId((i + n - 1) % n), 1),
            ],
        )
    });
    CombinatorialDrawing::new((0..n).map(VertexId), edges, rotations, [], Mode::Simple)
        .expect("cycle identifiers resolve")
}

/// Adds a new vertex inside an uncrossed region, joined to every corner.
pub fn insert_vertex_in_region(
    d: &CombinatorialDrawing,
    region: &Region,
) -> Result<CombinatorialDrawing, ConstructionError> {
    if !region.is_uncrossed() {
        return Err(ConstructionError::CrossedRegion);
    }
    let mut out = d.clone();
    let w = out.next_vertex_id();
    let first = out.next_edge_id().0;
    let mut spokes = Vec::new();
    for (id, c) in (first..).zip(region.corners()) {
        let Corner::Vertex { vertex, sector } = *c else {
            unreachable!("uncrossed region")
        };
        let e = EdgeId(id);
        out.push_edge(e, (vertex, w));
        spokes.push((vertex, sector, e));
    }
    // Walks run counter-clockwise around their region, so the spokes appear
    // in reverse walk order clockwise around the new vertex.
    let rot_w = spokes
        .iter()
        .rev()
        .map(|&(_, _, e)| HalfEdge::new(e, 1))
        .collect();
    out.add_vertex_with_rotation(w, rot_w);
    for (v, sector, e) in spokes {
        let mut rot = out.rotation(v).to_vec();
        let i = rot
            .iter()
            .position(|&h| h == sector)
            .expect("sector at corner");
        rot.insert(i + 1, HalfEdge::new(e, 0));
        out.add_vertex_with_rotation(v, rot);
    }
    Ok(out)
}

fn triangle() -> CombinatorialDrawing {
    cycle(3)
}

/// Stacked triangulation on `3 + depth` vertices: starting from a triangle,
/// each step puts a vertex into region number `step mod F` of the canonical
/// region list.
pub fn stacked_triangulation(depth: usize) -> CombinatorialDrawing {
    let mut d = triangle();
    for step in 0..depth {
        let regions = regions_unchecked(&d);
        let region = &regions[step % regions.len()];
        d = insert_vertex_in_region(&d, region).expect("stacked regions are uncrossed");
    }
    d
}

/// Stacked triangulation on `3 + depth` vertices with uniformly random
/// region choices.
pub fn random_stacked<R: Rng + ?Sized>(depth: usize, rng: &mut R) -> CombinatorialDrawing {
    let mut d = triangle();
    for _ in 0..depth {
        let regions = regions_unchecked(&d);
        let region = &regions[rng.gen_range(0..regions.len())];
        d = insert_vertex_in_region(&d, region).expect("stacked regions are uncrossed");
    }
    d
}

/// Turns the two uncrossed triangles on either side of uncrossed edge `e`
/// into a crossed quadrilateral by adding the opposite diagonal across `e`.
/// Returns `None` when that would not give an accepted drawing.
pub fn add_crossing_diagonal(d: &CombinatorialDrawing, e: EdgeId) -> Option<CombinatorialDrawing> {
    let (a, b) = d.endpoints(e)?;
    if a == b || d.is_crossed(e) {
        return None;
    }
    let regions = regions_unchecked(d);
    // The region containing dart a->b has the corner at b with sector (e, 1);
    // the one containing b->a has the corner at a with sector (e, 0).
    let side = |at: VertexId, sector: HalfEdge| {
        regions
            .iter()
            .find(|r| r.corners().contains(&Corner::Vertex { vertex: at, sector }))
    };
    let r1 = side(b, HalfEdge::new(e, 1))?;
    let r2 = side(a, HalfEdge::new(e, 0))?;
    if r1 == r2 {
        return None;
    }
    let apex = |r: &Region| -> Option<(VertexId, HalfEdge)> {
        if r.degree() != 3 || !r.is_uncrossed() {
            return None;
        }
        r.corners().iter().find_map(|c| match *c {
            Corner::Vertex { vertex, sector } if vertex != a && vertex != b => {
                Some((vertex, sector))
            }
            _ => None,
        })
    };
    let c = apex(r1)?;
    let w = apex(r2)?;
    if c.0 == w.0 {
        return None;
    }
    let mut out = d.clone();
    let f = out.insert_edge_after(c, w);
    // Clockwise around the crossing: toward c, toward b, toward w, toward a.
    out.add_crossing(CrossingRecord::new(
        HalfEdge::new(f, 0),
        HalfEdge::new(e, 1),
    ));
    validate(&out).is_accepted().then_some(out)
}

/// A random accepted drawing: a random stacked triangulation, some edges
/// turned into crossed quadrilaterals, then some uncrossed edges deleted.
/// The result is usually not triangulated.
pub fn random_drawing<R: Rng + ?Sized>(rng: &mut R) -> CombinatorialDrawing {
    let depth = rng.gen_range(1..=20);
    let mut d = random_stacked(depth, rng);
    let attempts = rng.gen_range(0..=d.edge_count());
    for _ in 0..attempts {
        let edges: Vec<EdgeId> = d.edges().map(|(e, _)| e).collect();
        let e = edges[rng.gen_range(0..edges.len())];
        if let Some(next) = add_crossing_diagonal(&d, e) {
            d = next;
        }
    }
    let deletions = rng.gen_range(0..=d.edge_count() / 3);
    for _ in 0..deletions {
        let uncrossed: Vec<EdgeId> = d
            .edges()
            .map(|(e, _)| e)
            .filter(|&e| !d.is_crossed(e))
            .collect();
        if uncrossed.is_empty() {
            break;
        }
        let e = uncrossed[rng.gen_range(0..uncrossed.len())];
        let mut next = d.clone();
        next.remove_edge(e);
        if validate(&next).is_accepted() {
            d = next;
        }
    }
    d
}

/// `k` copies of `base` identified at `hub`.
#[derive(Clone, Debug)]
pub struct GlueSpec {
    base: CombinatorialDrawing,
    hub: VertexId,
    copies: usize,
}

impl GlueSpec {
    pub fn new(
        base: CombinatorialDrawing,
        hub: VertexId,
        copies: usize,
    ) -> Result<Self, ConstructionError> {
        if copies == 0 {
            return Err(ConstructionError::NoCopies);
        }
        if !base.contains_vertex(hub) {
            return Err(ConstructionError::UnknownHub(hub));
        }
        let report = validate(&base);
        if !report.is_accepted() {
            return Err(ConstructionError::BadBase(report.to_string()));
        }
        if base.mode() != Mode::Simple {
            return Err(ConstructionError::BadBase("multigraph mode".into()));
        }
        Ok(GlueSpec { base, hub, copies })
    }

    /// Figure base with its smallest vertex as hub.
    pub fn fig1(copies: usize) -> Result<Self, ConstructionError> {
        let base = fixture(Fixture::Fig1)?;
        let hub = base.vertices().next().expect("non-empty");
        GlueSpec::new(base, hub, copies)
    }

    pub fn hub(&self) -> VertexId {
        self.hub
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn base(&self) -> &CombinatorialDrawing {
        &self.base
    }
}

/// Glues the copies at the hub. Copy 0 keeps the base identifiers; copy `i`
/// shifts every other vertex and every edge by `i` times the base's id span.
/// The hub rotation is the concatenation of the copies' hub rotations, so the
/// copies occupy disjoint angular sectors and never cross each other.
pub fn glue_copies(spec: &GlueSpec) -> CombinatorialDrawing {
    let base = &spec.base;
    let hub = spec.hub;
    let vspan = base.next_vertex_id().0;
    let espan = base.next_edge_id().0;
    let map_v = |i: u32, v: VertexId| {
        if v == hub {
            v
        } else {
            VertexId(v.0 + i * vspan)
        }
    };
    let map_h = |i: u32, h: HalfEdge| HalfEdge::new(EdgeId(h.edge.0 + i * espan), h.end);

    let mut vertices = vec![hub];
    let mut edges = Vec::new();
    let mut rotations: BTreeMap<VertexId, Vec<HalfEdge>> = BTreeMap::new();
    let mut crossings = Vec::new();
    for i in 0..spec.copies as u32 {
        vertices.extend(base.vertices().filter(|&v| v != hub).map(|v| map_v(i, v)));
        for (e, (u, v)) in base.edges() {
            edges.push((EdgeId(e.0 + i * espan), (map_v(i, u), map_v(i, v))));
        }
        for v in base.vertices() {
            rotations
                .entry(map_v(i, v))
                .or_default()
                .extend(base.rotation(v).iter().map(|&h| map_h(i, h)));
        }
        crossings.extend(
            base.crossings()
                .iter()
                .map(|c| CrossingRecord::new(map_h(i, c.first), map_h(i, c.second))),
        );
    }
    CombinatorialDrawing::new(vertices, edges, rotations, crossings, base.mode())
        .expect("glued identifiers resolve")
}
