//! Counting identities for triangulated 1-planar drawings and the
//! minimum-degree-7 lower bound as an executable certificate.
//!
//! With n vertices, m edges, x crossings, t uncrossed triangular regions and
//! n7 vertices of degree exactly 7, a triangulated drawing satisfies
//!
//! * `2m >= 8n - n7` when the minimum degree is at least 7,
//! * `m = 3n - 6 + x`,
//! * `2n - 4 = 2x + t`,
//! * `n7 <= 3t` when the minimum degree is at least 7,
//! * `2m <= 8n - 16 - t`.
//!
//! Chaining them gives `3 n7 >= 24n - 6m >= 6n + 36 - 6x >= 48 + 3t >= 48 + n7`,
//! hence `n7 >= 24`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::drawing::{require_accepted, CombinatorialDrawing, DrawingError, HalfEdge, VertexId};
use crate::skeleton::{regions_unchecked, Corner, Region};
use crate::triangulate::{triangulate, TriangulationError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub m: usize,
    pub x: usize,
    /// Regions of degree 3 whose corners are all vertices.
    pub t: usize,
    pub n7: usize,
    pub regions: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub min_degree: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} x={} t={} n7={} regions={} min_degree={}",
            self.n, self.m, self.x, self.t, self.n7, self.regions, self.min_degree
        )
    }
}

pub fn census(d: &CombinatorialDrawing) -> Result<Census, DrawingError> {
    require_accepted(d)?;
    Ok(census_of(d, &regions_unchecked(d)))
}

fn census_of(d: &CombinatorialDrawing, regions: &[Region]) -> Census {
    let degrees = d.degrees();
    let mut degree_histogram = BTreeMap::new();
    for &k in degrees.values() {
        *degree_histogram.entry(k).or_insert(0) += 1;
    }
    Census {
        n: d.vertex_count(),
        m: d.edge_count(),
        x: d.crossing_count(),
        t: regions
            .iter()
            .filter(|r| r.degree() == 3 && r.is_uncrossed())
            .count(),
        n7: degree_histogram.get(&7).copied().unwrap_or(0),
        regions: regions.len(),
        min_degree: degrees.values().copied().min().unwrap_or(0),
        degree_histogram,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `2m >= 8n - n7`
    DegreeSum,
    /// `m = 3n - 6 + x`
    EdgeCount,
    /// `2n - 4 = 2x + t`
    RegionCount,
    /// `n7 <= 3t`
    DegreeSevenCharge,
    /// `2m <= 8n - 16 - t`
    EdgeBound,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::DegreeSum,
        Identity::EdgeCount,
        Identity::RegionCount,
        Identity::DegreeSevenCharge,
        Identity::EdgeBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::DegreeSum => "degree_sum",
            Identity::EdgeCount => "edge_count",
            Identity::RegionCount => "region_count",
            Identity::DegreeSevenCharge => "degree7_charge",
            Identity::EdgeBound => "edge_bound",
        }
    }

    pub fn relation(&self) -> &'static str {
        match self {
            Identity::DegreeSum => "2m >= 8n-n7",
            Identity::EdgeCount => "m = 3n-6+x",
            Identity::RegionCount => "2n-4 = 2x+t",
            Identity::DegreeSevenCharge => "n7 <= 3t",
            Identity::EdgeBound => "2m <= 8n-16-t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    NotTriangulated,
    MinDegreeBelowSeven(usize),
}

impl fmt::Display for Applicability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Applicability::Applicable => f.write_str("applicable"),
            Applicability::NotTriangulated => f.write_str("not triangulated"),
            Applicability::MinDegreeBelowSeven(k) => write!(f, "min degree {k} < 7"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub applicability: Applicability,
    pub left: i64,
    pub right: i64,
    /// `None` when the identity is not applicable.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub census: Census,
    pub triangulated: bool,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn get(&self, identity: Identity) -> &IdentityCheck {
        self.checks
            .iter()
            .find(|c| c.identity == identity)
            .expect("every identity is reported")
    }

    /// No applicable identity fails.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }
}

pub fn check_identities(d: &CombinatorialDrawing) -> Result<IdentityReport, DrawingError> {
    require_accepted(d)?;
    let regions = regions_unchecked(d);
    let c = census_of(d, &regions);
    let triangulated = regions.iter().all(|r| r.degree() == 3);
    let (n, m, x, t, n7) = (c.n as i64, c.m as i64, c.x as i64, c.t as i64, c.n7 as i64);

    let tri_gate = if triangulated {
        Applicability::Applicable
    } else {
        Applicability::NotTriangulated
    };
    let deg_gate = if !triangulated {
        Applicability::NotTriangulated
    } else if c.min_degree < 7 {
        Applicability::MinDegreeBelowSeven(c.min_degree)
    } else {
        Applicability::Applicable
    };

    let check = |identity, applicability: Applicability, left: i64, right: i64| {
        let holds = (applicability == Applicability::Applicable).then_some(match identity {
            Identity::DegreeSum => left >= right,
            Identity::EdgeCount | Identity::RegionCount => left == right,
            Identity::DegreeSevenCharge | Identity::EdgeBound => left <= right,
        });
        IdentityCheck {
            identity,
            applicability,
            left,
            right,
            holds,
        }
    };

    let checks = vec![
        check(Identity::DegreeSum, deg_gate.clone(), 2 * m, 8 * n - n7),
        check(Identity::EdgeCount, tri_gate.clone(), m, 3 * n - 6 + x),
        check(
            Identity::RegionCount,
            tri_gate.clone(),
            2 * n - 4,
            2 * x + t,
        ),
        check(Identity::DegreeSevenCharge, deg_gate, n7, 3 * t),
        check(Identity::EdgeBound, tri_gate, 2 * m, 8 * n - 16 - t),
    ];
    Ok(IdentityReport {
        census: c,
        triangulated,
        checks,
    })
}

/// A degree-7 vertex and the uncrossed triangle between two of its
/// consecutive uncrossed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSevenWitness {
    pub vertex: VertexId,
    /// Consecutive uncrossed half-edges at the vertex, clockwise.
    pub edges: (HalfEdge, HalfEdge),
    /// Index into the canonical region list.
    pub region: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witnesses: Vec<DegreeSevenWitness>,
    /// Degree-7 vertices with no witness.
    pub unwitnessed: Vec<VertexId>,
    /// Region index to the number of degree-7 vertices charged to it.
    pub charges: BTreeMap<usize, usize>,
}

impl WitnessReport {
    pub fn max_charge(&self) -> usize {
        self.charges.values().copied().max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.unwitnessed.is_empty() && self.max_charge() <= 3
    }
}

/// For every degree-7 vertex, finds two consecutive uncrossed edges in its
/// rotation and the uncrossed triangular region between them, then charges
/// the vertex to that region.
pub fn degree_seven_witnesses(d: &CombinatorialDrawing) -> Result<WitnessReport, DrawingError> {
    require_accepted(d)?;
    let regions = regions_unchecked(d);
    let mut region_at: HashMap<HalfEdge, usize> = HashMap::new();
    for (i, r) in regions.iter().enumerate() {
        for c in r.corners() {
            if let Corner::Vertex { sector, .. } = *c {
                region_at.insert(sector, i);
            }
        }
    }
    let crossed: BTreeSet<_> = d
        .crossings()
        .iter()
        .flat_map(|c| [c.first.edge, c.second.edge])
        .collect();

    let mut witnesses = Vec::new();
    let mut unwitnessed = Vec::new();
    let mut charges = BTreeMap::new();
    for (v, deg) in d.degrees() {
        if deg != 7 {
            continue;
        }
        let rot = d.rotation(v);
        let found = (0..rot.len()).find_map(|i| {
            let a = rot[i];
            let b = rot[(i + 1) % rot.len()];
            if crossed.contains(&a.edge) || crossed.contains(&b.edge) {
                return None;
            }
            let region = *region_at.get(&a)?;
            let r = &regions[region];
            (r.degree() == 3 && r.is_uncrossed()).then_some(DegreeSevenWitness {
                vertex: v,
                edges: (a, b),
                region,
            })
        });
        match found {
            Some(w) => {
                *charges.entry(w.region).or_insert(0) += 1;
                witnesses.push(w);
            }
            None => unwitnessed.push(v),
        }
    }
    Ok(WitnessReport {
        witnesses,
        unwitnessed,
        charges,
    })
}

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("precondition failed: minimum degree {0} < 7")]
    MinDegree(usize),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

/// The inequality chain evaluated on the triangulated drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub three_n7: i64,
    pub degree_bound: i64,
    pub crossing_bound: i64,
    pub region_bound: i64,
    pub final_bound: i64,
}

impl Chain {
    pub fn values(&self) -> [i64; 5] {
        [
            self.three_n7,
            self.degree_bound,
            self.crossing_bound,
            self.region_bound,
            self.final_bound,
        ]
    }

    pub fn holds(&self) -> bool {
        self.values().windows(2).all(|w| w[0] >= w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub original: Census,
    pub triangulated: Census,
    pub inserted_edges: usize,
    pub chain: Chain,
    /// Degree-7 vertices of the triangulated drawing; each has degree 7 in
    /// the original as well.
    pub degree_seven_vertices: Vec<VertexId>,
    pub n7_triangulated: usize,
    pub n7_original: usize,
}

impl TheoremReport {
    pub fn conclusion_holds(&self) -> bool {
        self.chain.holds() && self.n7_triangulated >= 24 && self.n7_original >= 24
    }
}

/// Triangulates `d`, evaluates the chain there and carries the `n7 >= 24`
/// conclusion back to the original vertices.
pub fn verify_min_degree7_theorem(d: &CombinatorialDrawing) -> Result<TheoremReport, TheoremError> {
    let original = census(d)?;
    if original.min_degree < 7 {
        return Err(TheoremError::MinDegree(original.min_degree));
    }
    let tri = triangulate(d)?;
    let td = &tri.drawing;
    let regions = regions_unchecked(td);
    let c = census_of(td, &regions);
    if regions.iter().any(|r| r.degree() != 3) {
        return Err(TheoremError::Integrity(
            "triangulation left a non-triangular region".into(),
        ));
    }
    let (n, m, x, t, n7) = (c.n as i64, c.m as i64, c.x as i64, c.t as i64, c.n7 as i64);
    let chain = Chain {
        three_n7: 3 * n7,
        degree_bound: 24 * n - 6 * m,
        crossing_bound: 6 * n + 36 - 6 * x,
        region_bound: 48 + 3 * t,
        final_bound: 48 + n7,
    };
    if !chain.holds() {
        return Err(TheoremError::Integrity(format!(
            "chain violated: {:?}",
            chain.values()
        )));
    }
    let orig_deg = d.degrees();
    let tri_deg = td.degrees();
    let degree_seven_vertices: Vec<VertexId> = tri_deg
        .iter()
        .filter(|&(_, &k)| k == 7)
        .map(|(&v, _)| v)
        .collect();
    if let Some(v) = degree_seven_vertices
        .iter()
        .find(|v| orig_deg.get(v) != Some(&7))
    {
        return Err(TheoremError::Integrity(format!(
            "vertex {v} has degree 7 after triangulation but not before"
        )));
    }
    if c.n7 < 24 {
        return Err(TheoremError::Integrity(format!("n7 = {} < 24", c.n7)));
    }
    Ok(TheoremReport {
        n7_triangulated: c.n7,
        n7_original: original.n7,
        inserted_edges: tri.steps.len(),
        original,
        triangulated: c,
        chain,
        degree_seven_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, Fixture};

    #[test]
    fn k4_planar_census() {
        let c = census(&fixture(Fixture::K4Planar).unwrap()).unwrap();
        assert_eq!((c.n, c.m, c.x, c.t, c.n7), (4, 6, 0, 4, 0));
        assert_eq!(c.min_degree, 3);
    }

    #[test]
    fn k6_census() {
        let c = census(&fixture(Fixture::K6).unwrap()).unwrap();
        assert_eq!((c.n, c.m, c.x, c.t, c.n7), (6, 15, 3, 2, 0));
        assert_eq!(c.degree_histogram, BTreeMap::from([(5, 6)]));
    }

    #[test]
    fn k4_planar_identities() {
        let r = check_identities(&fixture(Fixture::K4Planar).unwrap()).unwrap();
        let e2 = r.get(Identity::EdgeCount);
        assert_eq!((e2.left, e2.right, e2.holds), (6, 6, Some(true)));
        let e3 = r.get(Identity::RegionCount);
        assert_eq!((e3.left, e3.right, e3.holds), (4, 4, Some(true)));
        assert_eq!(
            r.get(Identity::DegreeSum).applicability,
            Applicability::MinDegreeBelowSeven(3)
        );
        assert_eq!(r.get(Identity::DegreeSevenCharge).holds, None);
        assert!(r.all_hold());
    }

    #[test]
    fn c4_identities_are_gated() {
        let r = check_identities(&fixture(Fixture::C4).unwrap()).unwrap();
        assert!(!r.triangulated);
        assert!(r
            .checks
            .iter()
            .all(|c| c.applicability == Applicability::NotTriangulated));
    }

    #[test]
    fn triangulated_c4_identities() {
        let tri = triangulate(&fixture(Fixture::C4).unwrap()).unwrap();
        let r = check_identities(&tri.drawing).unwrap();
        let e2 = r.get(Identity::EdgeCount);
        assert_eq!((e2.left, e2.right), (6, 6));
        let e3 = r.get(Identity::RegionCount);
        assert_eq!((e3.left, e3.right), (4, 4));
        assert!(r.all_hold());
    }

    #[test]
    fn theorem_rejects_low_degree() {
        let err = verify_min_degree7_theorem(&fixture(Fixture::K6).unwrap()).unwrap_err();
        assert!(matches!(err, TheoremError::MinDegree(5)));
    }

    #[test]
    fn fig1_witnesses_partition_vertices() {
        let w = degree_seven_witnesses(&fixture(Fixture::Fig1).unwrap()).unwrap();
        assert_eq!(w.witnesses.len(), 24);
        assert!(w.unwitnessed.is_empty());
        assert_eq!(w.charges.len(), 8);
        assert!(w.charges.values().all(|&k| k == 3));
    }
}
