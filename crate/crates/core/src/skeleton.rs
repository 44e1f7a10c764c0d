//! Planarization and region enumeration.
//!
//! Every crossing becomes a degree-4 dummy vertex whose rotation is the
//! crossing's clockwise order. Regions of the drawing are the face orbits of
//! the resulting plane rotation system, walked as `next(h) = succ(twin(h))`.

use std::collections::{BTreeMap, HashMap};

use crate::drawing::{
    require_accepted, CombinatorialDrawing, CrossingRecord, DrawingError, EdgeId, HalfEdge,
    VertexId,
};

/// What a skeleton edge was in the original drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgePiece {
    pub original: EdgeId,
    /// `None` for an uncrossed edge kept whole. `Some(end)` for the piece that
    /// joins original endpoint `end` to the crossing; that endpoint is also
    /// end `end` of the piece.
    pub toward: Option<u8>,
}

/// A crossing-free drawing with one dummy vertex per crossing.
#[derive(Clone, Debug)]
pub struct PlanarSkeleton {
    drawing: CombinatorialDrawing,
    dummies: BTreeMap<VertexId, usize>,
    pieces: BTreeMap<EdgeId, EdgePiece>,
    original_crossings: Vec<CrossingRecord>,
}

impl PlanarSkeleton {
    pub fn drawing(&self) -> &CombinatorialDrawing {
        &self.drawing
    }

    /// Dummy vertex to index of the crossing it replaces.
    pub fn dummies(&self) -> &BTreeMap<VertexId, usize> {
        &self.dummies
    }

    pub fn dummy_of(&self, crossing: usize) -> Option<VertexId> {
        self.dummies
            .iter()
            .find(|(_, &c)| c == crossing)
            .map(|(&v, _)| v)
    }

    pub fn is_dummy(&self, v: VertexId) -> bool {
        self.dummies.contains_key(&v)
    }

    pub fn piece(&self, e: EdgeId) -> Option<EdgePiece> {
        self.pieces.get(&e).copied()
    }

    pub fn pieces(&self) -> &BTreeMap<EdgeId, EdgePiece> {
        &self.pieces
    }

    /// Maps a skeleton half-edge anchored at an original vertex back to the
    /// original half-edge. Half-edges at dummies have no original.
    pub fn original_half_edge(&self, h: HalfEdge) -> Option<HalfEdge> {
        let piece = self.pieces.get(&h.edge)?;
        match piece.toward {
            None => Some(HalfEdge::new(piece.original, h.end)),
            Some(end) if end == h.end => Some(HalfEdge::new(piece.original, end)),
            Some(_) => None,
        }
    }

    /// Undoes the planarization: drops dummies and merges edge pieces.
    pub fn restore(&self) -> CombinatorialDrawing {
        let sk = &self.drawing;
        let mut edges = Vec::new();
        for (e, (u, v)) in sk.edges() {
            let piece = self.pieces[&e];
            match piece.toward {
                None => edges.push((piece.original, (u, v))),
                Some(0) => {
                    let far = self
                        .pieces
                        .iter()
                        .find(|(_, p)| p.original == piece.original && p.toward == Some(1))
                        .and_then(|(&pe, _)| sk.endpoints(pe))
                        .map(|(_, w)| w)
                        .unwrap_or(v);
                    edges.push((piece.original, (u, far)));
                }
                Some(_) => {}
            }
        }
        let rotations = sk
            .vertices()
            .filter(|v| !self.is_dummy(*v))
            .map(|v| {
                let rot = sk
                    .rotation(v)
                    .iter()
                    .filter_map(|&h| self.original_half_edge(h))
                    .collect::<Vec<_>>();
                (v, rot)
            })
            .collect::<Vec<_>>();
        CombinatorialDrawing::new(
            sk.vertices().filter(|v| !self.is_dummy(*v)),
            edges,
            rotations,
            self.original_crossings.iter().copied(),
            sk.mode(),
        )
        .expect("skeleton identifiers resolve")
    }
}

/// Planarizes an accepted drawing.
pub fn planarize(d: &CombinatorialDrawing) -> Result<PlanarSkeleton, DrawingError> {
    require_accepted(d)?;
    Ok(planarize_unchecked(d))
}

/// Planarization assuming consistent rotations, no self-crossings and no edge
/// in two crossings.
pub(crate) fn planarize_unchecked(d: &CombinatorialDrawing) -> PlanarSkeleton {
    let mut next_vertex = d.next_vertex_id().0;
    let mut next_edge = d.next_edge_id().0;

    let mut pieces: BTreeMap<EdgeId, EdgePiece> = BTreeMap::new();
    let mut edges: Vec<(EdgeId, (VertexId, VertexId))> = Vec::new();
    // Half-edge replacement at original vertices: original (e, 1) of a crossed
    // edge becomes (e', 1) of its second piece.
    let mut far_piece: HashMap<EdgeId, EdgeId> = HashMap::new();
    let mut dummies = BTreeMap::new();
    let mut dummy_rotations = Vec::new();

    let crossing_of = d.crossing_of_edges();
    for (e, (u, v)) in d.edges() {
        match crossing_of.get(&e) {
            None => {
                pieces.insert(
                    e,
                    EdgePiece {
                        original: e,
                        toward: None,
                    },
                );
                edges.push((e, (u, v)));
            }
            Some(_) => {
                let second = EdgeId(next_edge);
                next_edge += 1;
                far_piece.insert(e, second);
                pieces.insert(
                    e,
                    EdgePiece {
                        original: e,
                        toward: Some(0),
                    },
                );
                pieces.insert(
                    second,
                    EdgePiece {
                        original: e,
                        toward: Some(1),
                    },
                );
            }
        }
    }

    // Segment of crossed edge e toward `end`, as a half-edge at the dummy.
    let at_dummy = |h: HalfEdge, far: &HashMap<EdgeId, EdgeId>| {
        if h.end == 0 {
            HalfEdge::new(h.edge, 1)
        } else {
            HalfEdge::new(far[&h.edge], 0)
        }
    };

    for (i, c) in d.crossings().iter().enumerate() {
        let dummy = VertexId(next_vertex);
        next_vertex += 1;
        dummies.insert(dummy, i);
        for h in [c.first, c.second] {
            let (u, v) = d.endpoints(h.edge).expect("crossing edge exists");
            edges.push((h.edge, (u, dummy)));
            edges.push((far_piece[&h.edge], (dummy, v)));
        }
        let rot = c
            .clockwise()
            .iter()
            .map(|&h| at_dummy(h, &far_piece))
            .collect::<Vec<_>>();
        dummy_rotations.push((dummy, rot));
    }

    let mut rotations: Vec<(VertexId, Vec<HalfEdge>)> = d
        .vertices()
        .map(|v| {
            let rot = d
                .rotation(v)
                .iter()
                .map(|&h| match far_piece.get(&h.edge) {
                    Some(&second) if h.end == 1 => HalfEdge::new(second, 1),
                    _ => h,
                })
                .collect();
            (v, rot)
        })
        .collect();
    rotations.extend(dummy_rotations);

    let drawing = CombinatorialDrawing::new(
        d.vertices().chain(dummies.keys().copied()),
        edges,
        rotations,
        [],
        d.mode(),
    )
    .expect("planarization identifiers resolve");

    PlanarSkeleton {
        drawing,
        dummies,
        pieces,
        original_crossings: d.crossings().to_vec(),
    }
}

/// Face orbits of a crossing-free drawing, each as its sequence of darts.
/// Dart `h` leaves `origin(h)`; the face lies clockwise-after `twin` of the
/// previous dart at every corner.
pub(crate) fn face_walks(d: &CombinatorialDrawing) -> Vec<Vec<HalfEdge>> {
    let mut position: HashMap<HalfEdge, (VertexId, usize)> = HashMap::new();
    for v in d.vertices() {
        for (i, &h) in d.rotation(v).iter().enumerate() {
            position.insert(h, (v, i));
        }
    }
    let succ = |h: HalfEdge| -> HalfEdge {
        let (v, i) = position[&h];
        let rot = d.rotation(v);
        rot[(i + 1) % rot.len()]
    };

    let mut seen: HashMap<HalfEdge, ()> = HashMap::new();
    let mut walks = Vec::new();
    for v in d.vertices() {
        for &start in d.rotation(v) {
            if seen.contains_key(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = start;
            while seen.insert(h, ()).is_none() {
                walk.push(h);
                h = succ(h.opposite());
            }
            walks.push(walk);
        }
    }
    walks
}

/// A corner incidence on a region's boundary walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    /// The region touches `vertex` in the angular sector clockwise-after
    /// half-edge `sector`.
    Vertex { vertex: VertexId, sector: HalfEdge },
    /// Index into the drawing's crossing list.
    Crossing(usize),
}

impl Corner {
    pub fn vertex(&self) -> Option<VertexId> {
        match *self {
            Corner::Vertex { vertex, .. } => Some(vertex),
            Corner::Crossing(_) => None,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Corner::Crossing(_))
    }
}

/// A region of the drawing: its corner incidences in boundary-walk order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Region {
    corners: Vec<Corner>,
}

impl Region {
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    /// Corner incidences, counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.corners.len()
    }

    pub fn is_uncrossed(&self) -> bool {
        self.corners.iter().all(|c| !c.is_crossing())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.corners.iter().any(|c| c.vertex() == Some(v))
    }

    /// Whether corner positions `a` and `b` are neighbours on the cyclic walk.
    pub fn are_consecutive(&self, a: usize, b: usize) -> bool {
        let k = self.corners.len();
        a != b && ((a + 1) % k == b || (b + 1) % k == a)
    }

    pub(crate) fn from_corners(mut corners: Vec<Corner>) -> Self {
        if let Some((i, _)) = corners.iter().enumerate().min_by_key(|(_, c)| **c) {
            corners.rotate_left(i);
        }
        Region { corners }
    }
}

/// Regions of an accepted drawing in canonical order.
pub fn enumerate_regions(d: &CombinatorialDrawing) -> Result<Vec<Region>, DrawingError> {
    require_accepted(d)?;
    Ok(regions_unchecked(d))
}

pub(crate) fn regions_unchecked(d: &CombinatorialDrawing) -> Vec<Region> {
    let skel = planarize_unchecked(d);
    regions_of_skeleton(&skel)
}

pub(crate) fn regions_of_skeleton(skel: &PlanarSkeleton) -> Vec<Region> {
    let sk = skel.drawing();
    let mut regions: Vec<Region> = face_walks(sk)
        .into_iter()
        .map(|walk| {
            let k = walk.len();
            let corners = (0..k)
                .map(|i| {
                    let out = walk[i];
                    let v = sk.origin(out).expect("dart resolves");
                    match skel.dummies.get(&v) {
                        Some(&c) => Corner::Crossing(c),
                        None => {
                            let incoming = walk[(i + k - 1) % k].opposite();
                            Corner::Vertex {
                                vertex: v,
                                sector: skel
                                    .original_half_edge(incoming)
                                    .expect("half-edge at an original vertex"),
                            }
                        }
                    }
                })
                .collect();
            Region::from_corners(corners)
        })
        .collect();
    regions.sort();
    regions
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, Fixture};

    #[test]
    fn skeleton_counts_on_k4_crossed() {
        let d = fixture(Fixture::K4Crossed).unwrap();
        let skel = planarize(&d).unwrap();
        assert_eq!(skel.drawing().vertex_count(), 5);
        assert_eq!(skel.drawing().edge_count(), 8);
        assert_eq!(skel.dummies().len(), 1);
        let dummy = skel.dummy_of(0).unwrap();
        assert_eq!(skel.drawing().degree(dummy), 4);
        assert_eq!(skel.restore(), d);
    }

    #[test]
    fn crossing_free_skeleton_is_identity() {
        let d = fixture(Fixture::Octahedron).unwrap();
        let skel = planarize(&d).unwrap();
        assert_eq!(skel.drawing(), &d);
        assert!(skel.dummies().is_empty());
    }

    #[test]
    fn k4_crossed_regions_by_hand() {
        let d = fixture(Fixture::K4Crossed).unwrap();
        let regions = enumerate_regions(&d).unwrap();
        assert_eq!(regions.len(), 5);
        let mut shapes: Vec<(usize, usize)> = regions
            .iter()
            .map(|r| {
                (
                    r.degree(),
                    r.corners().iter().filter(|c| c.is_crossing()).count(),
                )
            })
            .collect();
        shapes.sort();
        assert_eq!(shapes, vec![(3, 1), (3, 1), (3, 1), (3, 1), (4, 0)]);
    }

    #[test]
    fn k4_planar_has_four_triangles() {
        let d = fixture(Fixture::K4Planar).unwrap();
        let regions = enumerate_regions(&d).unwrap();
        assert_eq!(regions.len(), 4);
        assert!(regions.iter().all(|r| r.degree() == 3 && r.is_uncrossed()));
    }

    #[test]
    fn every_sector_belongs_to_one_region() {
        let d = fixture(Fixture::K6).unwrap();
        let regions = enumerate_regions(&d).unwrap();
        let mut sectors: Vec<HalfEdge> = regions
            .iter()
            .flat_map(|r| r.corners().iter())
            .filter_map(|c| match *c {
                Corner::Vertex { sector, .. } => Some(sector),
                Corner::Crossing(_) => None,
            })
            .collect();
        sectors.sort();
        sectors.dedup();
        assert_eq!(sectors.len(), 2 * d.edge_count());
    }

    #[test]
    fn enumerating_rejected_drawing_fails() {
        let d = CombinatorialDrawing::new(
            [VertexId(0), VertexId(1)],
            [(EdgeId(0), (VertexId(0), VertexId(1)))],
            [
                (VertexId(0), vec![HalfEdge::new(EdgeId(0), 0)]),
                (VertexId(1), vec![HalfEdge::new(EdgeId(0), 1)]),
            ],
            [],
            Default::default(),
        )
        .unwrap();
        assert!(matches!(
            enumerate_regions(&d),
            Err(DrawingError::Rejected(_))
        ));
    }
}
