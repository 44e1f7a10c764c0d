//! The `.1pd` text format.
//!
//! Line oriented, UTF-8, `#` starts a comment:
//!
//! ```text
//! onepd 1
//! mode simple
//! vertex 0
//! edge 0 0 1
//! rot 0 0.0 2.1
//! cross 4.0 5.1
//! ```
//!
//! `rot V E.END ...` lists the half-edges at `V` clockwise; `END` names the
//! endpoint of the edge record the half-edge is anchored at. `cross E.A F.B`
//! says that clockwise around the crossing the segments run toward end `A`
//! of `E`, end `B` of `F`, the other end of `E`, the other end of `F`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::drawing::{
    CombinatorialDrawing, CrossingRecord, EdgeId, HalfEdge, Mode, StructuralError, VertexId,
    Violation,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate {what}")]
    Duplicate { line: usize, what: String },
    #[error("line {line}: dangling reference: {what}")]
    Dangling { line: usize, what: String },
    #[error("line {line}: self-crossing forbidden: edge {edge} crosses itself")]
    SelfCrossing { line: usize, edge: EdgeId },
    #[error("missing header line `onepd {FORMAT_VERSION}`")]
    MissingHeader,
}

/// Source line of every item of a parsed document (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceMap {
    pub vertices: HashMap<VertexId, usize>,
    pub edges: HashMap<EdgeId, usize>,
    pub rotations: HashMap<VertexId, usize>,
    pub crossings: HashMap<CrossingRecord, usize>,
}

impl SourceMap {
    /// Best line to point at for a violation of `d`.
    pub fn line_of(&self, v: &Violation, d: &CombinatorialDrawing) -> Option<usize> {
        let crossing_line = |i: usize| {
            d.crossings()
                .get(i)
                .and_then(|c| self.crossings.get(&c.canonical()))
                .copied()
        };
        match v {
            Violation::LoopInSimpleMode { edge } => self.edges.get(edge).copied(),
            Violation::ParallelEdges { second, .. } => self.edges.get(second).copied(),
            Violation::SelfCrossing { crossing, .. }
            | Violation::AdjacentEdgesCross { crossing, .. } => crossing_line(*crossing),
            Violation::EdgeCrossedTwice { second, .. } => crossing_line(*second),
            Violation::HalfEdgeDuplicated { half_edge }
            | Violation::HalfEdgeMissing { half_edge } => self.edges.get(&half_edge.edge).copied(),
            Violation::HalfEdgeMisplaced { found_at, .. } => self.rotations.get(found_at).copied(),
            _ => None,
        }
    }
}

/// A parsed document, before conversion to a drawing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawingDocument {
    pub version: u32,
    pub mode: Mode,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    pub rotations: Vec<(VertexId, Vec<HalfEdge>)>,
    pub crossings: Vec<CrossingRecord>,
    pub comments: Vec<String>,
    pub source: SourceMap,
}

impl DrawingDocument {
    pub fn to_drawing(&self) -> Result<CombinatorialDrawing, StructuralError> {
        CombinatorialDrawing::new(
            self.vertices.iter().copied(),
            self.edges.iter().map(|&(e, u, v)| (e, (u, v))),
            self.rotations.iter().cloned(),
            self.crossings.iter().copied(),
            self.mode,
        )
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn tokens(&self) -> impl Iterator<Item = (usize, &'a str)> + 'a {
        let text = self.text;
        text.split_whitespace().map(move |tok| {
            let offset = tok.as_ptr() as usize - text.as_ptr() as usize;
            (offset + 1, tok)
        })
    }

    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn end_column(&self) -> usize {
        self.text.trim_end().len() + 1
    }

    fn number<T: std::str::FromStr>(
        &self,
        tok: Option<(usize, &str)>,
        what: &str,
    ) -> Result<T, ParseError> {
        match tok {
            None => Err(self.error(self.end_column(), format!("expected {what}"))),
            Some((col, t)) => t
                .parse()
                .map_err(|_| self.error(col, format!("expected {what}, found {t:?}"))),
        }
    }

    fn half_edge(&self, tok: Option<(usize, &str)>) -> Result<HalfEdge, ParseError> {
        let Some((col, t)) = tok else {
            return Err(self.error(self.end_column(), "expected half-edge EDGE.END"));
        };
        let bad = || self.error(col, format!("expected half-edge EDGE.END, found {t:?}"));
        let (e, end) = t.split_once('.').ok_or_else(bad)?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        let end: u8 = match end {
            "0" => 0,
            "1" => 1,
            _ => return Err(bad()),
        };
        Ok(HalfEdge::new(EdgeId(e), end))
    }

    fn finish(&self, mut rest: impl Iterator<Item = (usize, &'a str)>) -> Result<(), ParseError> {
        match rest.next() {
            Some((col, t)) => Err(self.error(col, format!("unexpected token {t:?}"))),
            None => Ok(()),
        }
    }
}

pub fn parse_document(text: &str) -> Result<DrawingDocument, ParseError> {
    let mut doc = DrawingDocument::default();
    let mut header = false;
    let mut mode_seen = false;

    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            doc.comments.push(c.to_string());
        }
        let line = Line { number, text: body };
        let mut toks = line.tokens();
        let Some((col, keyword)) = toks.next() else {
            continue;
        };
        if !header {
            if keyword != "onepd" {
                return Err(ParseError::MissingHeader);
            }
            let version: u32 = line.number(toks.next(), "format version")?;
            if version != FORMAT_VERSION {
                return Err(line.error(col, format!("unsupported format version {version}")));
            }
            line.finish(toks)?;
            doc.version = version;
            header = true;
            continue;
        }
        match keyword {
            "mode" => {
                if mode_seen {
                    return Err(ParseError::Duplicate {
                        line: number,
                        what: "mode line".into(),
                    });
                }
                mode_seen = true;
                doc.mode = match toks.next() {
                    Some((_, "simple")) => Mode::Simple,
                    Some((_, "multigraph")) => Mode::Multigraph,
                    Some((c, t)) => return Err(line.error(c, format!("unknown mode {t:?}"))),
                    None => return Err(line.error(line.end_column(), "expected mode")),
                };
                line.finish(toks)?;
            }
            "vertex" => {
                let v = VertexId(line.number(toks.next(), "vertex id")?);
                line.finish(toks)?;
                if doc.source.vertices.insert(v, number).is_some() {
                    return Err(ParseError::Duplicate {
                        line: number,
                        what: format!("vertex {v}"),
                    });
                }
                doc.vertices.push(v);
            }
            "edge" => {
                let e = EdgeId(line.number(toks.next(), "edge id")?);
                let u = VertexId(line.number(toks.next(), "endpoint")?);
                let v = VertexId(line.number(toks.next(), "endpoint")?);
                line.finish(toks)?;
                if doc.source.edges.insert(e, number).is_some() {
                    return Err(ParseError::Duplicate {
                        line: number,
                        what: format!("edge {e}"),
                    });
                }
                doc.edges.push((e, u, v));
            }
            "rot" => {
                let v = VertexId(line.number(toks.next(), "vertex id")?);
                let mut rot = Vec::new();
                for tok in toks.by_ref() {
                    rot.push(line.half_edge(Some(tok))?);
                }
                if rot.is_empty() {
                    return Err(line.error(line.end_column(), "rotation line has no half-edges"));
                }
                if doc.source.rotations.insert(v, number).is_some() {
                    return Err(ParseError::Duplicate {
                        line: number,
                        what: format!("rotation for vertex {v}"),
                    });
                }
                doc.rotations.push((v, rot));
            }
            "cross" => {
                let first = line.half_edge(toks.next())?;
                let second = line.half_edge(toks.next())?;
                line.finish(toks)?;
                if first.edge == second.edge {
                    return Err(ParseError::SelfCrossing {
                        line: number,
                        edge: first.edge,
                    });
                }
                let c = CrossingRecord::new(first, second);
                if doc.source.crossings.insert(c.canonical(), number).is_some() {
                    return Err(ParseError::Duplicate {
                        line: number,
                        what: "crossing".into(),
                    });
                }
                doc.crossings.push(c);
            }
            other => return Err(line.error(col, format!("unknown keyword {other:?}"))),
        }
    }
    if !header {
        return Err(ParseError::MissingHeader);
    }
    check_references(&doc)?;
    Ok(doc)
}

fn check_references(doc: &DrawingDocument) -> Result<(), ParseError> {
    let src = &doc.source;
    for &(e, u, v) in &doc.edges {
        for w in [u, v] {
            if !src.vertices.contains_key(&w) {
                return Err(ParseError::Dangling {
                    line: src.edges[&e],
                    what: format!("edge {e} names unknown vertex {w}"),
                });
            }
        }
    }
    for (v, rot) in &doc.rotations {
        let line = src.rotations[v];
        if !src.vertices.contains_key(v) {
            return Err(ParseError::Dangling {
                line,
                what: format!("rotation for unknown vertex {v}"),
            });
        }
        if let Some(h) = rot.iter().find(|h| !src.edges.contains_key(&h.edge)) {
            return Err(ParseError::Dangling {
                line,
                what: format!("unknown edge in half-edge {h}"),
            });
        }
    }
    for c in &doc.crossings {
        let line = src.crossings[&c.canonical()];
        for h in [c.first, c.second] {
            if !src.edges.contains_key(&h.edge) {
                return Err(ParseError::Dangling {
                    line,
                    what: format!("unknown edge in half-edge {h}"),
                });
            }
        }
    }
    Ok(())
}

/// Parses a document into a drawing. The drawing is not validated.
pub fn parse(text: &str) -> Result<CombinatorialDrawing, ParseError> {
    parse_with_source(text).map(|(d, _)| d)
}

pub fn parse_with_source(text: &str) -> Result<(CombinatorialDrawing, SourceMap), ParseError> {
    let doc = parse_document(text)?;
    let d = doc.to_drawing().map_err(|e| ParseError::Dangling {
        line: 0,
        what: e.to_string(),
    })?;
    Ok((d, doc.source))
}

/// Canonical document: ascending identifiers, rotations from their smallest
/// half-edge, crossings written from their smallest segment-end.
pub fn serialize(d: &CombinatorialDrawing) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "onepd {FORMAT_VERSION}");
    let _ = writeln!(out, "mode {}", d.mode());
    for v in d.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for (e, (u, v)) in d.edges() {
        let _ = writeln!(out, "edge {e} {u} {v}");
    }
    let rotations: BTreeMap<VertexId, &[HalfEdge]> = d
        .vertices()
        .map(|v| (v, d.rotation(v)))
        .filter(|(_, r)| !r.is_empty())
        .collect();
    for (v, rot) in rotations {
        let _ = write!(out, "rot {v}");
        for h in rot {
            let _ = write!(out, " {h}");
        }
        out.push('\n');
    }
    for c in d.crossings() {
        let _ = writeln!(out, "cross {} {}", c.first, c.second);
    }
    out
}

/// The document with comments and blank lines stripped.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim_end())
        .filter(|l| !l.trim().is_empty())
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, Fixture};
    use crate::drawing::validate;
    use crate::triangulate::triangulate;

    #[test]
    fn shipped_fixtures_are_canonical() {
        for f in Fixture::NAMED {
            let text = f.document().unwrap();
            let d = parse(text).unwrap();
            assert_eq!(serialize(&d), strip_comments(text), "{f}");
        }
    }

    #[test]
    fn k4_document_is_byte_stable() {
        let d = fixture(Fixture::K4Planar).unwrap();
        let text = serialize(&d);
        assert_eq!(parse(&text).unwrap(), d);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn triangulated_c4_is_written_as_multigraph() {
        let tri = triangulate(&fixture(Fixture::C4).unwrap()).unwrap();
        let text = serialize(&tri.drawing);
        assert!(text.contains("mode multigraph"));
        assert!(text.contains("edge 4 0 2"));
        assert!(text.contains("edge 5 0 2"));
        assert_eq!(parse(&text).unwrap(), tri.drawing);
    }

    #[test]
    fn self_crossing_is_a_parse_error() {
        let text = "onepd 1\nvertex 0\nvertex 1\nedge 0 0 1\nrot 0 0.0\nrot 1 0.1\ncross 0.0 0.1\n";
        let err = parse(text).unwrap_err();
        assert_eq!(
            err,
            ParseError::SelfCrossing {
                line: 7,
                edge: EdgeId(0)
            }
        );
        assert!(err.to_string().contains("self-crossing forbidden"));
    }

    #[test]
    fn truncated_rotation_line() {
        let text = "onepd 1\nvertex 0\nvertex 1\nedge 0 0 1\nrot 0\n";
        match parse(text).unwrap_err() {
            ParseError::Syntax { line, .. } => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        let text = "onepd 1\nvertex 0\nvertex 1\nedge 0 0 1\nrot 0 0.\n";
        assert_eq!(
            parse(text).unwrap_err(),
            ParseError::Syntax {
                line: 5,
                column: 7,
                message: "expected half-edge EDGE.END, found \"0.\"".into()
            }
        );
    }

    #[test]
    fn duplicate_and_dangling() {
        let dup = "onepd 1\nvertex 0\nvertex 0\n";
        assert!(matches!(
            parse(dup),
            Err(ParseError::Duplicate { line: 3, .. })
        ));
        let dangling = "onepd 1\nvertex 0\nedge 0 0 5\n";
        assert!(matches!(
            parse(dangling),
            Err(ParseError::Dangling { line: 3, .. })
        ));
        assert_eq!(parse("vertex 0\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn violations_point_at_lines() {
        let text = "\
onepd 1
vertex 0
vertex 1
vertex 2
vertex 3
edge 0 0 1
edge 1 1 2
edge 2 2 3
edge 3 3 0
edge 4 0 2
edge 5 1 3
rot 0 0.0 3.1 4.0
rot 1 1.0 0.1 5.0
rot 2 2.0 1.1 4.1
rot 3 3.0 2.1 5.1
cross 0.0 1.1
";
        let (d, src) = parse_with_source(text).unwrap();
        let report = validate(&d);
        let adjacent = report
            .violations
            .iter()
            .find(|v| matches!(v, Violation::AdjacentEdgesCross { .. }))
            .unwrap();
        assert_eq!(src.line_of(adjacent, &d), Some(16));
    }
}
