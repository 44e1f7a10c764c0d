//! Combinatorial 1-planar drawings.
//!
//! A drawing is a rotation system (clockwise order of edge-ends around every
//! vertex) together with explicit crossing records. Drawings live on the
//! sphere; no outer region is distinguished.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::skeleton;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One end of an edge. `end` is 0 for the first endpoint of the edge record
/// and 1 for the second.
///
/// Inside a [`CrossingRecord`] the same value names the segment of the edge
/// that runs from the crossing point toward that endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        HalfEdge { edge, end }
    }

    pub fn opposite(self) -> Self {
        HalfEdge {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

/// A crossing between two edges. Clockwise around the crossing point the four
/// segments appear as `first`, `second`, `first.opposite()`,
/// `second.opposite()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingRecord {
    pub first: HalfEdge,
    pub second: HalfEdge,
}

impl CrossingRecord {
    pub fn new(first: HalfEdge, second: HalfEdge) -> Self {
        CrossingRecord { first, second }
    }

    /// The four segment-ends in clockwise order.
    pub fn clockwise(&self) -> [HalfEdge; 4] {
        [
            self.first,
            self.second,
            self.first.opposite(),
            self.second.opposite(),
        ]
    }

    /// Same crossing, written so that `first` is the smallest of the four
    /// segment-ends.
    pub fn canonical(&self) -> Self {
        let cw = self.clockwise();
        let start = (0..4).min_by_key(|&i| cw[i]).unwrap_or(0);
        CrossingRecord {
            first: cw[start],
            second: cw[(start + 1) % 4],
        }
    }

    pub fn edges(&self) -> (EdgeId, EdgeId) {
        (self.first.edge, self.second.edge)
    }

    pub fn involves(&self, edge: EdgeId) -> bool {
        self.first.edge == edge || self.second.edge == edge
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Simple,
    Multigraph,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Simple => f.write_str("simple"),
            Mode::Multigraph => f.write_str("multigraph"),
        }
    }
}

/// An identifier in the drawing that does not resolve.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("rotation given for unknown vertex {0}")]
    UnknownRotationVertex(VertexId),
    #[error("half-edge {0} references an unknown edge")]
    UnknownEdge(HalfEdge),
    #[error("half-edge {0} has end marker other than 0 or 1")]
    BadEnd(HalfEdge),
}

/// Failures of operations that require an accepted drawing.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("drawing rejected: {0}")]
    Rejected(ValidationReport),
    #[error("drawing is not triangulated ({0} regions of degree other than 3)")]
    NotTriangulated(usize),
}

/// A 1-planar drawing given combinatorially.
///
/// Rotations are stored starting at their smallest half-edge and crossings
/// are stored canonically and sorted, so structural equality is equality of
/// drawings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialDrawing {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    rotations: BTreeMap<VertexId, Vec<HalfEdge>>,
    crossings: Vec<CrossingRecord>,
    mode: Mode,
}

impl CombinatorialDrawing {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, (VertexId, VertexId))>,
        rotations: impl IntoIterator<Item = (VertexId, Vec<HalfEdge>)>,
        crossings: impl IntoIterator<Item = CrossingRecord>,
        mode: Mode,
    ) -> Result<Self, StructuralError> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let edges: BTreeMap<EdgeId, (VertexId, VertexId)> = edges.into_iter().collect();
        for (&edge, &(u, v)) in &edges {
            for w in [u, v] {
                if !vertices.contains(&w) {
                    return Err(StructuralError::UnknownEndpoint { edge, vertex: w });
                }
            }
        }
        let check_half = |h: HalfEdge| {
            if h.end > 1 {
                Err(StructuralError::BadEnd(h))
            } else if !edges.contains_key(&h.edge) {
                Err(StructuralError::UnknownEdge(h))
            } else {
                Ok(())
            }
        };
        let mut rots = BTreeMap::new();
        for (v, rot) in rotations {
            if !vertices.contains(&v) {
                return Err(StructuralError::UnknownRotationVertex(v));
            }
            for &h in &rot {
                check_half(h)?;
            }
            rots.insert(v, canonical_rotation(rot));
        }
        let mut crosses = Vec::new();
        for c in crossings {
            check_half(c.first)?;
            check_half(c.second)?;
            crosses.push(c.canonical());
        }
        crosses.sort();
        Ok(CombinatorialDrawing {
            vertices,
            edges,
            rotations: rots,
            crossings: crosses,
            mode,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, (VertexId, VertexId))> + '_ {
        self.edges.iter().map(|(&e, &uv)| (e, uv))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// The vertex a half-edge is anchored at.
    pub fn origin(&self, h: HalfEdge) -> Option<VertexId> {
        self.edges
            .get(&h.edge)
            .map(|&(u, v)| if h.end == 0 { u } else { v })
    }

    /// Clockwise rotation at `v`; empty for vertices without a rotation.
    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        self.rotations.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Degree of `v`; a loop contributes 2.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut deg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in self.edges.values() {
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
        }
        deg
    }

    /// Crossing index per crossed edge. Edges in several records map to the
    /// first one.
    pub fn crossing_of_edges(&self) -> HashMap<EdgeId, usize> {
        let mut map = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            map.entry(c.first.edge).or_insert(i);
            map.entry(c.second.edge).or_insert(i);
        }
        map
    }

    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.crossings.iter().any(|c| c.involves(e))
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.keys().next_back().copied()
    }

    pub(crate) fn next_edge_id(&self) -> EdgeId {
        self.max_edge_id().map_or(EdgeId(0), |e| EdgeId(e.0 + 1))
    }

    pub(crate) fn next_vertex_id(&self) -> VertexId {
        self.max_vertex_id()
            .map_or(VertexId(0), |v| VertexId(v.0 + 1))
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Adds edge `(u, v)` with its ends placed clockwise-after `after_u` at
    /// `u` and after `after_v` at `v`. For a loop both ends go into the
    /// rotation of `u`.
    pub(crate) fn insert_edge_after(
        &mut self,
        (u, after_u): (VertexId, HalfEdge),
        (v, after_v): (VertexId, HalfEdge),
    ) -> EdgeId {
        let e = self.next_edge_id();
        self.edges.insert(e, (u, v));
        self.vertices.insert(u);
        self.vertices.insert(v);
        insert_after(
            self.rotations.entry(u).or_default(),
            after_u,
            HalfEdge::new(e, 0),
        );
        insert_after(
            self.rotations.entry(v).or_default(),
            after_v,
            HalfEdge::new(e, 1),
        );
        self.renormalize(u);
        self.renormalize(v);
        e
    }

    pub(crate) fn add_vertex_with_rotation(&mut self, v: VertexId, rotation: Vec<HalfEdge>) {
        self.vertices.insert(v);
        self.rotations.insert(v, canonical_rotation(rotation));
    }

    pub(crate) fn push_edge(&mut self, e: EdgeId, endpoints: (VertexId, VertexId)) {
        self.edges.insert(e, endpoints);
    }

    pub(crate) fn add_crossing(&mut self, c: CrossingRecord) {
        self.crossings.push(c.canonical());
        self.crossings.sort();
    }

    /// Deletes an edge, its rotation entries and any crossing it is part of.
    pub(crate) fn remove_edge(&mut self, e: EdgeId) {
        let Some((u, v)) = self.edges.remove(&e) else {
            return;
        };
        for w in [u, v] {
            if let Some(rot) = self.rotations.get_mut(&w) {
                rot.retain(|h| h.edge != e);
            }
            self.renormalize(w);
        }
        self.crossings.retain(|c| !c.involves(e));
    }

    fn renormalize(&mut self, v: VertexId) {
        if let Some(rot) = self.rotations.remove(&v) {
            self.rotations.insert(v, canonical_rotation(rot));
        }
    }
}

fn insert_after(rot: &mut Vec<HalfEdge>, after: HalfEdge, h: HalfEdge) {
    match rot.iter().position(|&x| x == after) {
        Some(i) => rot.insert(i + 1, h),
        None => rot.push(h),
    }
}

fn canonical_rotation(mut rot: Vec<HalfEdge>) -> Vec<HalfEdge> {
    if let Some((i, _)) = rot.iter().enumerate().min_by_key(|(_, h)| **h) {
        rot.rotate_left(i);
    }
    rot
}

/// One reason a drawing is not an accepted good 1-planar drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices {
        n: usize,
    },
    LoopInSimpleMode {
        edge: EdgeId,
    },
    ParallelEdges {
        first: EdgeId,
        second: EdgeId,
    },
    SelfCrossing {
        crossing: usize,
        edge: EdgeId,
    },
    AdjacentEdgesCross {
        crossing: usize,
        first: EdgeId,
        second: EdgeId,
        shared: VertexId,
    },
    EdgeCrossedTwice {
        edge: EdgeId,
        first: usize,
        second: usize,
    },
    HalfEdgeMissing {
        half_edge: HalfEdge,
    },
    HalfEdgeDuplicated {
        half_edge: HalfEdge,
    },
    HalfEdgeMisplaced {
        half_edge: HalfEdge,
        found_at: VertexId,
        expected: VertexId,
    },
    Disconnected {
        components: usize,
    },
    EulerCharacteristic {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    DegenerateRegion {
        region: usize,
        degree: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            TooFewVertices { n } => write!(f, "too few vertices: {n} < 3"),
            LoopInSimpleMode { edge } => write!(f, "loop edge {edge} in simple mode"),
            ParallelEdges { first, second } => {
                write!(f, "parallel edges {first} and {second} in simple mode")
            }
            SelfCrossing { crossing, edge } => {
                write!(f, "self-crossing forbidden: crossing {crossing} pairs edge {edge} with itself")
            }
            AdjacentEdgesCross { crossing, first, second, shared } => write!(
                f,
                "adjacent edges cross: crossing {crossing} pairs edges {first} and {second} sharing vertex {shared}"
            ),
            EdgeCrossedTwice { edge, first, second } => {
                write!(f, "edge crossed twice: edge {edge} in crossings {first} and {second}")
            }
            HalfEdgeMissing { half_edge } => {
                write!(f, "rotation inconsistency: half-edge {half_edge} missing")
            }
            HalfEdgeDuplicated { half_edge } => {
                write!(f, "rotation inconsistency: half-edge {half_edge} listed twice")
            }
            HalfEdgeMisplaced { half_edge, found_at, expected } => write!(
                f,
                "rotation inconsistency: half-edge {half_edge} listed at vertex {found_at}, belongs to {expected}"
            ),
            Disconnected { components } => {
                write!(f, "disconnected drawing: {components} components")
            }
            EulerCharacteristic { vertices, edges, faces } => write!(
                f,
                "euler characteristic failure: V'={vertices} E'={edges} F'={faces} gives {}",
                *vertices as i64 - *edges as i64 + *faces as i64
            ),
            DegenerateRegion { region, degree } => {
                write!(f, "region {region} has degree {degree} < 3")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("accepted");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks goodness, 1-planarity, rotation consistency, connectivity and the
/// sphere Euler characteristic of the planarization. Violations are data.
pub fn validate(d: &CombinatorialDrawing) -> ValidationReport {
    let mut violations = Vec::new();
    let n = d.vertex_count();
    if n < 3 {
        violations.push(Violation::TooFewVertices { n });
    }

    if d.mode == Mode::Simple {
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (&e, &(u, v)) in &d.edges {
            if u == v {
                violations.push(Violation::LoopInSimpleMode { edge: e });
                continue;
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                violations.push(Violation::ParallelEdges { first, second: e });
            } else {
                seen.insert(key, e);
            }
        }
    }

    let mut crossing_ok = true;
    let mut first_crossing: HashMap<EdgeId, usize> = HashMap::new();
    for (i, c) in d.crossings.iter().enumerate() {
        let (e, f) = c.edges();
        if e == f {
            violations.push(Violation::SelfCrossing {
                crossing: i,
                edge: e,
            });
            crossing_ok = false;
            continue;
        }
        let (a, b) = d.edges[&e];
        let (p, q) = d.edges[&f];
        if let Some(&shared) = [a, b].iter().find(|w| **w == p || **w == q) {
            violations.push(Violation::AdjacentEdgesCross {
                crossing: i,
                first: e,
                second: f,
                shared,
            });
        }
        for edge in [e, f] {
            match first_crossing.get(&edge) {
                Some(&prev) => {
                    violations.push(Violation::EdgeCrossedTwice {
                        edge,
                        first: prev,
                        second: i,
                    });
                    crossing_ok = false;
                }
                None => {
                    first_crossing.insert(edge, i);
                }
            }
        }
    }

    let rotation_ok = check_rotations(d, &mut violations);

    let components = component_count(d);
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }

    if rotation_ok && crossing_ok && components == 1 {
        let skel = skeleton::planarize_unchecked(d);
        let faces = skeleton::face_walks(skel.drawing());
        let vertices = skel.drawing().vertex_count();
        let edges = skel.drawing().edge_count();
        if vertices as i64 - edges as i64 + faces.len() as i64 != 2 {
            violations.push(Violation::EulerCharacteristic {
                vertices,
                edges,
                faces: faces.len(),
            });
        } else {
            for (region, walk) in faces.iter().enumerate() {
                if walk.len() < 3 {
                    violations.push(Violation::DegenerateRegion {
                        region,
                        degree: walk.len(),
                    });
                }
            }
        }
    }

    ValidationReport { violations }
}

/// Validates and converts rejection into an error.
pub fn require_accepted(d: &CombinatorialDrawing) -> Result<(), DrawingError> {
    let report = validate(d);
    if report.is_accepted() {
        Ok(())
    } else {
        Err(DrawingError::Rejected(report))
    }
}

fn check_rotations(d: &CombinatorialDrawing, violations: &mut Vec<Violation>) -> bool {
    let before = violations.len();
    let mut seen: HashMap<HalfEdge, VertexId> = HashMap::new();
    for (&v, rot) in &d.rotations {
        for &h in rot {
            if seen.insert(h, v).is_some() {
                violations.push(Violation::HalfEdgeDuplicated { half_edge: h });
                continue;
            }
            let expected = d.origin(h).unwrap_or(v);
            if expected != v {
                violations.push(Violation::HalfEdgeMisplaced {
                    half_edge: h,
                    found_at: v,
                    expected,
                });
            }
        }
    }
    for &e in d.edges.keys() {
        for end in 0..2 {
            let h = HalfEdge::new(e, end);
            if !seen.contains_key(&h) {
                violations.push(Violation::HalfEdgeMissing { half_edge: h });
            }
        }
    }
    violations.len() == before
}

/// Connected components of the underlying multigraph (isolated vertices
/// count as components).
pub fn component_count(d: &CombinatorialDrawing) -> usize {
    let index: HashMap<VertexId, usize> = d
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = index.len();
    for &(u, v) in d.edges.values() {
        let a = find(&mut parent, index[&u]);
        let b = find(&mut parent, index[&v]);
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components
}
