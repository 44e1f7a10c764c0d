//! Combinatorial 1-planar drawings.
//!
//! A drawing is a rotation system plus explicit crossing records. The crate
//! validates drawings, enumerates their regions, triangulates them by edge
//! insertion, computes the vertex/edge/crossing/region census and its
//! identities, certifies the minimum-degree-7 lower bound, builds the
//! glue-at-a-vertex family and bounds its matchings.

pub mod census;
pub mod constructions;
pub mod crossing_removal;
pub mod drawing;
pub mod format;
pub mod matching;
pub mod render;
pub mod skeleton;
pub mod triangulate;

pub use census::{
    census, check_identities, degree_seven_witnesses, verify_min_degree7_theorem, Census,
    IdentityReport, TheoremReport,
};
pub use constructions::{fixture, glue_copies, stacked_triangulation, Fixture, GlueSpec};
pub use crossing_removal::{remove_one_edge_per_crossing, EdgeSelector};
pub use drawing::{
    validate, CombinatorialDrawing, CrossingRecord, EdgeId, HalfEdge, Mode, ValidationReport,
    VertexId, Violation,
};
pub use format::{parse, serialize};
pub use matching::{
    brute_force_matching_size, lemma_matching_bound, maximum_matching, tutte_berge_upper_bound,
    underlying_graph, MatchingResult, UndirectedSimpleGraph,
};
pub use render::render_svg;
pub use skeleton::{enumerate_regions, planarize, Corner, PlanarSkeleton, Region};
pub use triangulate::{
    insert_edge_in_region, is_triangulated, triangulate, InsertionStep, Triangulation,
};
