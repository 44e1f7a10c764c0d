//! Edge insertion until every region has exactly three corners.

use thiserror::Error;

use crate::drawing::{
    require_accepted, CombinatorialDrawing, DrawingError, EdgeId, Mode, VertexId,
};
use crate::skeleton::{regions_unchecked, Corner, Region};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("region is not a region of this drawing")]
    UnknownRegion,
    #[error("corner {0} is not on the region walk")]
    CornerOutOfRange(usize),
    #[error("corner {0} is a crossing, not a vertex")]
    CornerNotVertex(usize),
    #[error("corners {0} and {1} are consecutive on the region walk")]
    ConsecutiveCorners(usize, usize),
    #[error("region of degree {degree} < 3 found: {region:?}")]
    DegenerateRegion { region: Region, degree: usize },
    #[error("no admissible corner pair in region {0:?}")]
    NoAdmissiblePair(Region),
}

/// One edge inserted by [`triangulate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionStep {
    /// The region as it was before the insertion.
    pub region: Region,
    /// Corner positions on the region walk.
    pub corners: (usize, usize),
    pub endpoints: (VertexId, VertexId),
    pub new_edge: EdgeId,
    /// Sum over regions of `degree - 3`, before and after.
    pub potential_before: usize,
    pub potential_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub drawing: CombinatorialDrawing,
    pub steps: Vec<InsertionStep>,
}

pub fn potential(regions: &[Region]) -> usize {
    regions.iter().map(|r| r.degree().saturating_sub(3)).sum()
}

pub fn is_triangulated(d: &CombinatorialDrawing) -> Result<bool, DrawingError> {
    require_accepted(d)?;
    Ok(regions_unchecked(d).iter().all(|r| r.degree() == 3))
}

/// Draws a new uncrossed edge inside `region` between the vertex corners at
/// walk positions `a` and `b`.
pub fn insert_edge_in_region(
    d: &CombinatorialDrawing,
    region: &Region,
    a: usize,
    b: usize,
) -> Result<CombinatorialDrawing, TriangulationError> {
    require_accepted(d)?;
    if !regions_unchecked(d).contains(region) {
        return Err(TriangulationError::UnknownRegion);
    }
    insert_unchecked(d, region, a, b).map(|(out, _)| out)
}

fn insert_unchecked(
    d: &CombinatorialDrawing,
    region: &Region,
    a: usize,
    b: usize,
) -> Result<(CombinatorialDrawing, EdgeId), TriangulationError> {
    let corners = region.corners();
    let corner = |i: usize| -> Result<_, TriangulationError> {
        match corners.get(i) {
            None => Err(TriangulationError::CornerOutOfRange(i)),
            Some(Corner::Crossing(_)) => Err(TriangulationError::CornerNotVertex(i)),
            Some(&Corner::Vertex { vertex, sector }) => Ok((vertex, sector)),
        }
    };
    let ca = corner(a)?;
    let cb = corner(b)?;
    if a == b || region.are_consecutive(a, b) {
        return Err(TriangulationError::ConsecutiveCorners(a, b));
    }
    let mut out = d.clone().with_mode(Mode::Multigraph);
    let e = out.insert_edge_after(ca, cb);
    Ok((out, e))
}

type PairKey = (bool, VertexId, VertexId, usize, usize);

/// Picks the corner pair for the next insertion: the lexicographically
/// smallest pair of distinct vertices, then walk positions. A loop at a
/// repeated vertex is used only when no other pair exists.
fn choose_pair(region: &Region) -> Option<(usize, usize)> {
    let corners = region.corners();
    let mut best: Option<(PairKey, (usize, usize))> = None;
    for (i, ci) in corners.iter().enumerate() {
        let Some(vi) = ci.vertex() else {
            continue;
        };
        for (j, cj) in corners.iter().enumerate().skip(i + 1) {
            let Some(vj) = cj.vertex() else {
                continue;
            };
            if region.are_consecutive(i, j) {
                continue;
            }
            let key = (vi == vj, vi.min(vj), vi.max(vj), i, j);
            if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                best = Some((key, (i, j)));
            }
        }
    }
    best.map(|(_, pair)| pair)
}

/// Inserts uncrossed edges until every region has degree 3.
///
/// Regions are scanned in canonical order and the first region of degree
/// above 3 is split. The output is always in multigraph mode.
pub fn triangulate(d: &CombinatorialDrawing) -> Result<Triangulation, TriangulationError> {
    require_accepted(d)?;
    let mut current = d.clone().with_mode(Mode::Multigraph);
    let mut steps = Vec::new();
    let mut regions = regions_unchecked(&current);
    if let Some(r) = regions.iter().find(|r| r.degree() < 3) {
        return Err(TriangulationError::DegenerateRegion {
            region: r.clone(),
            degree: r.degree(),
        });
    }
    loop {
        let before = potential(&regions);
        let Some(region) = regions.iter().find(|r| r.degree() > 3) else {
            break;
        };
        let (a, b) = choose_pair(region)
            .ok_or_else(|| TriangulationError::NoAdmissiblePair(region.clone()))?;
        let endpoints = (
            region.corners()[a].vertex().expect("vertex corner"),
            region.corners()[b].vertex().expect("vertex corner"),
        );
        let (next, new_edge) = insert_unchecked(&current, region, a, b)?;
        let next_regions = regions_unchecked(&next);
        steps.push(InsertionStep {
            region: region.clone(),
            corners: (a, b),
            endpoints,
            new_edge,
            potential_before: before,
            potential_after: potential(&next_regions),
        });
        current = next;
        regions = next_regions;
    }
    Ok(Triangulation {
        drawing: current,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, Fixture};
    use crate::drawing::validate;
    use crate::skeleton::enumerate_regions;

    #[test]
    fn k4_is_triangulated_and_c4_is_not() {
        assert!(is_triangulated(&fixture(Fixture::K4Planar).unwrap()).unwrap());
        let c4 = fixture(Fixture::C4).unwrap();
        assert!(!is_triangulated(&c4).unwrap());
        let regions = enumerate_regions(&c4).unwrap();
        assert_eq!(
            regions.iter().map(Region::degree).collect::<Vec<_>>(),
            vec![4, 4]
        );
    }

    #[test]
    fn splitting_c4_gives_two_triangles() {
        let c4 = fixture(Fixture::C4).unwrap();
        let region = enumerate_regions(&c4).unwrap().remove(0);
        let out = insert_edge_in_region(&c4, &region, 0, 2).unwrap();
        assert!(validate(&out).is_accepted());
        let degrees: Vec<usize> = enumerate_regions(&out)
            .unwrap()
            .iter()
            .map(Region::degree)
            .collect();
        assert_eq!(degrees.iter().filter(|&&k| k == 3).count(), 2);
        assert_eq!(degrees.iter().filter(|&&k| k == 4).count(), 1);
    }

    #[test]
    fn split_of_degree_five_region() {
        // A 5-cycle has two regions of degree 5; corners two apart split one
        // into degrees 3 and 4.
        let c5 = crate::constructions::cycle(5);
        let region = enumerate_regions(&c5).unwrap().remove(0);
        let out = insert_edge_in_region(&c5, &region, 1, 3).unwrap();
        let mut degrees: Vec<usize> = enumerate_regions(&out)
            .unwrap()
            .iter()
            .map(Region::degree)
            .collect();
        degrees.sort();
        assert_eq!(degrees, vec![3, 4, 5]);
    }

    #[test]
    fn bad_corner_choices_are_rejected() {
        let c4 = fixture(Fixture::C4).unwrap();
        let region = enumerate_regions(&c4).unwrap().remove(0);
        assert_eq!(
            insert_edge_in_region(&c4, &region, 0, 1),
            Err(TriangulationError::ConsecutiveCorners(0, 1))
        );
        assert_eq!(
            insert_edge_in_region(&c4, &region, 3, 0),
            Err(TriangulationError::ConsecutiveCorners(3, 0))
        );
        assert_eq!(
            insert_edge_in_region(&c4, &region, 0, 9),
            Err(TriangulationError::CornerOutOfRange(9))
        );

        let k4x = fixture(Fixture::K4Crossed).unwrap();
        let tri = enumerate_regions(&k4x)
            .unwrap()
            .into_iter()
            .find(|r| !r.is_uncrossed())
            .unwrap();
        let crossing_pos = tri.corners().iter().position(Corner::is_crossing).unwrap();
        assert_eq!(
            insert_edge_in_region(&k4x, &tri, crossing_pos, (crossing_pos + 2) % 3),
            Err(TriangulationError::CornerNotVertex(crossing_pos))
        );
    }

    #[test]
    fn triangulating_c4_doubles_a_diagonal() {
        let c4 = fixture(Fixture::C4).unwrap();
        let out = triangulate(&c4).unwrap();
        assert_eq!(out.steps.len(), 2);
        assert_eq!(out.drawing.edge_count(), 6);
        assert_eq!(out.drawing.mode(), Mode::Multigraph);
        for step in &out.steps {
            assert_eq!(step.endpoints, (VertexId(0), VertexId(2)));
            assert_eq!(step.potential_after + 1, step.potential_before);
        }
        let regions = enumerate_regions(&out.drawing).unwrap();
        assert_eq!(regions.len(), 4);
        assert!(regions.iter().all(|r| r.degree() == 3));
    }

    #[test]
    fn triangulated_input_is_unchanged() {
        let k4 = fixture(Fixture::K4Planar).unwrap();
        let out = triangulate(&k4).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.drawing, k4.clone().with_mode(Mode::Multigraph));
        let again = triangulate(&out.drawing).unwrap();
        assert_eq!(again.drawing, out.drawing);
    }

    #[test]
    fn k4_crossed_gets_one_outer_edge() {
        let out = triangulate(&fixture(Fixture::K4Crossed).unwrap()).unwrap();
        assert_eq!(out.steps.len(), 1);
        assert_eq!(out.drawing.edge_count(), 7);
        assert_eq!(out.steps[0].region.degree(), 4);
    }

    #[test]
    fn loop_is_the_last_resort() {
        let region = Region::from_corners(vec![
            Corner::Vertex {
                vertex: VertexId(0),
                sector: crate::HalfEdge::new(EdgeId(0), 0),
            },
            Corner::Vertex {
                vertex: VertexId(1),
                sector: crate::HalfEdge::new(EdgeId(0), 1),
            },
            Corner::Vertex {
                vertex: VertexId(0),
                sector: crate::HalfEdge::new(EdgeId(1), 0),
            },
            Corner::Vertex {
                vertex: VertexId(2),
                sector: crate::HalfEdge::new(EdgeId(1), 1),
            },
        ]);
        assert_eq!(choose_pair(&region), Some((1, 3)));
        let star = Region::from_corners(vec![
            Corner::Vertex {
                vertex: VertexId(0),
                sector: crate::HalfEdge::new(EdgeId(0), 0),
            },
            Corner::Crossing(0),
            Corner::Vertex {
                vertex: VertexId(0),
                sector: crate::HalfEdge::new(EdgeId(1), 0),
            },
            Corner::Crossing(1),
        ]);
        assert_eq!(choose_pair(&star), Some((0, 2)));
    }
}
