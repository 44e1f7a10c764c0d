//! SVG rendering through a barycentric layout of the planarization.
//!
//! The corners of the outer region are pinned to a regular polygon and every
//! other skeleton vertex (crossing dummies included) is relaxed to the mean of
//! its neighbours. Crossed edges are drawn as two segments meeting at their
//! dummy. A geometric self-check runs on the result; failures end up as a
//! warning inside the SVG rather than an error.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;
use std::fmt::Write as _;

use thiserror::Error;

use crate::drawing::{require_accepted, CombinatorialDrawing, DrawingError, EdgeId, VertexId};
use crate::skeleton::{planarize_unchecked, regions_of_skeleton, Corner, PlanarSkeleton};

pub const LAYOUT_TOLERANCE: f64 = 1e-9;
pub const GEOMETRY_TOLERANCE: f64 = 1e-6;
pub const MAX_SWEEPS: usize = 2_000_000;

const CANVAS: f64 = 800.0;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("outer region {0} does not exist")]
    UnknownRegion(usize),
    #[error("layout did not converge after {0} sweeps")]
    NonConvergence(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    fn sub(self, o: Point) -> Point {
        Point {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub positions: BTreeMap<VertexId, Point>,
    pub outer_region: usize,
    pub sweeps: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GeometryCheck {
    pub issues: Vec<String>,
    /// Crossings drawn as transversal meetings of their two edges.
    pub transversal_crossings: usize,
}

impl GeometryCheck {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rendering {
    pub svg: String,
    pub layout: Layout,
    pub check: GeometryCheck,
    pub crossings_drawn: usize,
}

/// Barycentric layout of the planarization of an accepted drawing. Without
/// `outer_region`, the region of largest degree (first in canonical order)
/// is outer.
pub fn layout(
    d: &CombinatorialDrawing,
    outer_region: Option<usize>,
) -> Result<(PlanarSkeleton, Layout), RenderError> {
    require_accepted(d)?;
    let skel = planarize_unchecked(d);
    let regions = regions_of_skeleton(&skel);
    let outer = match outer_region {
        Some(i) if i < regions.len() => i,
        Some(i) => return Err(RenderError::UnknownRegion(i)),
        None => regions
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.degree().cmp(&b.1.degree()).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .unwrap_or(0),
    };

    let sk = skel.drawing();
    let mut boundary: Vec<VertexId> = Vec::new();
    for c in regions[outer].corners() {
        let v = match *c {
            Corner::Vertex { vertex, .. } => vertex,
            Corner::Crossing(i) => skel.dummy_of(i).expect("dummy per crossing"),
        };
        if !boundary.contains(&v) {
            boundary.push(v);
        }
    }

    let ids: Vec<VertexId> = sk.vertices().collect();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut neighbours = vec![Vec::new(); ids.len()];
    for (_, (u, v)) in sk.edges() {
        if u != v {
            neighbours[index[&u]].push(index[&v]);
            neighbours[index[&v]].push(index[&u]);
        }
    }

    let mut pos = vec![Point { x: 0.0, y: 0.0 }; ids.len()];
    let mut fixed = vec![false; ids.len()];
    let k = boundary.len() as f64;
    for (i, v) in boundary.iter().enumerate() {
        let angle = TAU * i as f64 / k;
        pos[index[v]] = Point {
            x: angle.cos(),
            y: angle.sin(),
        };
        fixed[index[v]] = true;
    }

    let mut sweeps = 0;
    loop {
        if sweeps >= MAX_SWEEPS {
            return Err(RenderError::NonConvergence(sweeps));
        }
        sweeps += 1;
        let mut moved: f64 = 0.0;
        for v in 0..ids.len() {
            if fixed[v] || neighbours[v].is_empty() {
                continue;
            }
            let inv = 1.0 / neighbours[v].len() as f64;
            let (sx, sy) = neighbours[v]
                .iter()
                .fold((0.0, 0.0), |(x, y), &w| (x + pos[w].x, y + pos[w].y));
            let next = Point {
                x: sx * inv,
                y: sy * inv,
            };
            moved = moved.max(next.sub(pos[v]).norm());
            pos[v] = next;
        }
        if moved < LAYOUT_TOLERANCE {
            break;
        }
    }

    let positions = ids.iter().zip(pos).map(|(&v, p)| (v, p)).collect();
    Ok((
        skel,
        Layout {
            positions,
            outer_region: outer,
            sweeps,
        },
    ))
}

fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let orient = |p: Point, q: Point, r: Point| q.sub(p).cross(r.sub(p));
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    let point_seg = |p: Point, s: Point, t: Point| {
        let st = t.sub(s);
        let len2 = st.dot(st);
        let u = if len2 == 0.0 {
            0.0
        } else {
            (p.sub(s).dot(st) / len2).clamp(0.0, 1.0)
        };
        p.sub(Point {
            x: s.x + u * st.x,
            y: s.y + u * st.y,
        })
        .norm()
    };
    point_seg(a, c, d)
        .min(point_seg(b, c, d))
        .min(point_seg(c, a, b))
        .min(point_seg(d, a, b))
}

/// Checks that skeleton segments meet only at shared endpoints and that
/// every crossing is transversal.
pub fn check_geometry(skel: &PlanarSkeleton, layout: &Layout) -> GeometryCheck {
    let sk = skel.drawing();
    let pos = &layout.positions;
    let mut issues = Vec::new();
    let segments: Vec<(EdgeId, VertexId, VertexId)> = sk
        .edges()
        .filter(|(_, (u, v))| u != v)
        .map(|(e, (u, v))| (e, u, v))
        .collect();
    let original = |e: EdgeId| skel.piece(e).map_or(e, |p| p.original);

    for &(e, u, v) in &segments {
        if pos[&u].sub(pos[&v]).norm() < GEOMETRY_TOLERANCE {
            issues.push(format!("edge {} has coincident endpoints", original(e)));
        }
    }
    for (i, &(e, a, b)) in segments.iter().enumerate() {
        for &(f, c, d) in &segments[i + 1..] {
            let shared = [c, d].iter().filter(|w| **w == a || **w == b).count();
            let (oe, of) = (original(e), original(f));
            match shared {
                0 => {
                    if segment_distance(pos[&a], pos[&b], pos[&c], pos[&d]) < GEOMETRY_TOLERANCE {
                        issues.push(format!(
                            "edges {oe} and {of} meet away from a recorded crossing"
                        ));
                    }
                }
                1 => {
                    let apex = if a == c || a == d { a } else { b };
                    let p = if apex == a { b } else { a };
                    let q = if apex == c { d } else { c };
                    let s = pos[&p].sub(pos[&apex]);
                    let t = pos[&q].sub(pos[&apex]);
                    let scale = s.norm() * t.norm();
                    if scale > 0.0
                        && (s.cross(t) / scale).abs() < GEOMETRY_TOLERANCE
                        && s.dot(t) > 0.0
                    {
                        issues.push(format!("edges {oe} and {of} overlap at vertex {apex}"));
                    }
                }
                _ => issues.push(format!(
                    "parallel edges {oe} and {of} share one straight segment"
                )),
            }
        }
    }

    let mut transversal = 0;
    for (&dummy, &crossing) in skel.dummies() {
        let centre = pos[&dummy];
        let mut rays: Vec<(f64, EdgeId)> = sk
            .rotation(dummy)
            .iter()
            .map(|h| {
                let (u, v) = sk.endpoints(h.edge).expect("piece");
                let far = if u == dummy { v } else { u };
                let dir = pos[&far].sub(centre);
                (dir.y.atan2(dir.x), original(h.edge))
            })
            .collect();
        rays.sort_by(|a, b| a.0.total_cmp(&b.0));
        let alternating = (0..4).all(|i| rays[i].1 != rays[(i + 1) % 4].1);
        if alternating {
            transversal += 1;
        } else {
            issues.push(format!("crossing {crossing} is not transversal"));
        }
    }

    GeometryCheck {
        issues,
        transversal_crossings: transversal,
    }
}

fn to_canvas(p: Point) -> (f64, f64) {
    let margin = 40.0;
    let scale = (CANVAS - 2.0 * margin) / 2.0;
    (margin + (p.x + 1.0) * scale, margin + (1.0 - p.y) * scale)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace("--", "- -")
}

/// Renders `d` as an SVG 1.1 document.
pub fn render_svg(
    d: &CombinatorialDrawing,
    outer_region: Option<usize>,
) -> Result<Rendering, RenderError> {
    let (skel, layout) = layout(d, outer_region)?;
    let check = check_geometry(&skel, &layout);
    let pos = &layout.positions;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}" data-vertices="{}" data-edges="{}" data-crossings="{}">"#,
        d.vertex_count(),
        d.edge_count(),
        d.crossing_count()
    );
    if check.passed() {
        let _ = writeln!(svg, "<!-- self-check: passed -->");
    } else {
        for issue in &check.issues {
            let _ = writeln!(svg, "<!-- warning: {} -->", escape(issue));
        }
    }
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(
        svg,
        r##"<g class="edges" stroke="#333" stroke-width="1.5" fill="none">"##
    );
    let crossing_of = d.crossing_of_edges();
    for (e, (u, v)) in d.edges() {
        if u == v {
            let (x, y) = to_canvas(pos[&u]);
            let _ = writeln!(
                svg,
                r#"<circle class="loop" data-edge="{e}" cx="{:.3}" cy="{:.3}" r="12"/>"#,
                x + 12.0,
                y
            );
            continue;
        }
        let (x1, y1) = to_canvas(pos[&u]);
        let (x2, y2) = to_canvas(pos[&v]);
        match crossing_of.get(&e).and_then(|&c| skel.dummy_of(c)) {
            Some(dummy) => {
                let (cx, cy) = to_canvas(pos[&dummy]);
                let _ = writeln!(
                    svg,
                    r##"<polyline class="crossed" data-edge="{e}" stroke="#b03030" points="{x1:.3},{y1:.3} {cx:.3},{cy:.3} {x2:.3},{y2:.3}"/>"##
                );
            }
            None => {
                let _ = writeln!(
                    svg,
                    r#"<line data-edge="{e}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
                );
            }
        }
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r##"<g class="crossings" fill="#b03030">"##);
    let mut crossings_drawn = 0;
    for (&dummy, &c) in skel.dummies() {
        let (x, y) = to_canvas(pos[&dummy]);
        let _ = writeln!(
            svg,
            r#"<circle class="crossing" data-crossing="{c}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#
        );
        crossings_drawn += 1;
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r##"<g class="vertices" fill="#1f4e9a" font-family="sans-serif" font-size="11">"##
    );
    for v in d.vertices() {
        let (x, y) = to_canvas(pos[&v]);
        let _ = writeln!(
            svg,
            r#"<circle data-vertex="{v}" cx="{x:.3}" cy="{y:.3}" r="6"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" fill="black">{v}</text>"#,
            x + 7.0,
            y - 7.0
        );
    }
    let _ = writeln!(svg, "</g>");
    if !check.passed() {
        let _ = writeln!(
            svg,
            r#"<text class="warning" x="10" y="20" fill="red" font-family="sans-serif" font-size="14">warning: geometric self-check failed ({} issues)</text>"#,
            check.issues.len()
        );
    }
    let _ = writeln!(svg, "</svg>");

    Ok(Rendering {
        svg,
        layout,
        check,
        crossings_drawn,
    })
}
