use std::collections::BTreeSet;

use oneplanar::census::{check_identities, Identity};
use oneplanar::constructions::{glue_copies, GlueSpec};
use oneplanar::matching::{maximum_matching, tutte_berge_upper_bound};
use oneplanar::*;

fn fig1() -> CombinatorialDrawing {
    fixture(Fixture::Fig1).unwrap()
}

#[test]
fn fig1_is_accepted_and_seven_regular() {
    let d = fig1();
    assert!(validate(&d).is_accepted());
    assert_eq!(d.vertex_count(), 24);
    assert!(d.degrees().values().all(|&k| k == 7));
}

#[test]
fn fig1_census_is_forced() {
    let c = census(&fig1()).unwrap();
    assert_eq!((c.n, c.m, c.x, c.t, c.n7), (24, 84, 18, 8, 24));
    assert_eq!(c.min_degree, 7);
    // t + 4x regions: every crossing is surrounded by four triangles.
    assert_eq!(c.regions, 80);
    assert!(is_triangulated(&fig1()).unwrap());
}

#[test]
fn fig1_skeleton_counts() {
    let skel = planarize(&fig1()).unwrap();
    assert_eq!(skel.drawing().vertex_count(), 42);
    assert_eq!(skel.drawing().edge_count(), 120);
    assert_eq!(skel.restore(), fig1());
}

#[test]
fn fig1_underlying_graph() {
    let g = underlying_graph(&fig1());
    assert_eq!(g.vertex_count(), 24);
    assert_eq!(g.edge_count(), 84);
    assert!(g.vertices().all(|v| g.degree(v) == 7));
}

#[test]
fn fig1_identities_hold_with_equality() {
    let r = check_identities(&fig1()).unwrap();
    assert!(r.all_hold());
    let e1 = r.get(Identity::DegreeSum);
    assert_eq!((e1.left, e1.right), (168, 168));
    let e4 = r.get(Identity::DegreeSevenCharge);
    assert_eq!((e4.left, e4.right), (24, 24));
    let bound = r.get(Identity::EdgeBound);
    assert_eq!((bound.left, bound.right), (168, 168));
}

#[test]
fn fig1_chain_is_all_equalities() {
    let report = verify_min_degree7_theorem(&fig1()).unwrap();
    assert_eq!(report.chain.values(), [72; 5]);
    assert_eq!(report.n7_triangulated, 24);
    assert_eq!(report.inserted_edges, 0);
}

#[test]
fn fig1_minus_one_edge_per_crossing() {
    let out = remove_one_edge_per_crossing(&fig1(), EdgeSelector::SmallerId).unwrap();
    assert_eq!(out.edge_count(), 66);
    assert_eq!(out.crossing_count(), 0);
    assert_eq!(enumerate_regions(&out).unwrap().len(), 44);
    assert!(is_triangulated(&out).unwrap());
}

#[test]
fn triangulated_c4_underlying_graph_collapses_parallels() {
    let tri = triangulate(&fixture(Fixture::C4).unwrap()).unwrap().drawing;
    assert_eq!(tri.edge_count(), 6);
    let g = underlying_graph(&tri);
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
}

#[test]
fn glued_families() {
    for (k, n, m) in [(2usize, 47usize, 168usize), (3, 70, 252)] {
        let spec = GlueSpec::fig1(k).unwrap();
        let d = glue_copies(&spec);
        assert!(validate(&d).is_accepted());
        assert_eq!((d.vertex_count(), d.edge_count()), (n, m));
        assert_eq!(d.degree(spec.hub()), 7 * k);
        let report = verify_min_degree7_theorem(&d).unwrap();
        assert!(report.chain.holds());
        assert_eq!(report.n7_original, 23 * k);
        assert!(report.n7_triangulated >= 24);
    }
}

#[test]
fn glued_pair_matching_certificate() {
    let spec = GlueSpec::fig1(2).unwrap();
    let g = underlying_graph(&glue_copies(&spec));
    let bound = tutte_berge_upper_bound(&g, &BTreeSet::from([spec.hub()])).unwrap();
    assert_eq!(bound, 23);
    let m = maximum_matching(&g);
    assert!(m.is_disjoint());
    assert!(m.size() <= 23);
}

#[test]
fn k6_triangulation_and_identities() {
    let k6 = fixture(Fixture::K6).unwrap();
    assert!(is_triangulated(&k6).unwrap());
    let r = check_identities(&k6).unwrap();
    assert_eq!(r.get(Identity::EdgeCount).left, 15);
    assert_eq!(r.get(Identity::RegionCount).right, 8);
    assert!(r.all_hold());
}
