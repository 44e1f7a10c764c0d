//! Deleting one edge at every crossing of a triangulated drawing.

use crate::drawing::{
    require_accepted, CombinatorialDrawing, CrossingRecord, DrawingError, EdgeId,
};
use crate::skeleton::regions_unchecked;

/// Which of the two edges of a crossing gets deleted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeSelector {
    #[default]
    SmallerId,
    LargerId,
}

impl EdgeSelector {
    pub fn pick(&self, c: &CrossingRecord) -> EdgeId {
        let (e, f) = c.edges();
        match self {
            EdgeSelector::SmallerId => e.min(f),
            EdgeSelector::LargerId => e.max(f),
        }
    }
}

/// Removes one edge per crossing from a triangulated drawing. The result is
/// crossing-free, triangulated, and has `t + 2x` regions.
pub fn remove_one_edge_per_crossing(
    d: &CombinatorialDrawing,
    selector: EdgeSelector,
) -> Result<CombinatorialDrawing, DrawingError> {
    require_accepted(d)?;
    let bad = regions_unchecked(d)
        .iter()
        .filter(|r| r.degree() != 3)
        .count();
    if bad > 0 {
        return Err(DrawingError::NotTriangulated(bad));
    }
    let doomed: Vec<EdgeId> = d.crossings().iter().map(|c| selector.pick(c)).collect();
    let mut out = d.clone();
    for e in doomed {
        out.remove_edge(e);
    }
    Ok(out)
}
