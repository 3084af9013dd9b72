//! Text formats.
//!
//! Graph files:
//!
//! ```text
//! # comments run to the end of the line
//! ring x, y
//! vertices v0 v1 v2
//! edge v0 v1 : x
//! edge v1 v2 : x^2 + y^2
//! ```
//!
//! Edge ids `e1, e2, ...` follow declaration order. Without a `vertices`
//! line, vertices are taken from the edges in order of first appearance.
//!
//! Spline files hold one `vertex : polynomial` line per vertex.

use super::{EdgeLabeledGraph, Spline};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{parse_poly, Ring};

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim())).filter(|(_, l)| !l.is_empty())
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(i) => (&line[..i], line[i..].trim()),
        None => (line, ""),
    }
}

pub fn parse_graph<F: Field>(text: &str) -> Result<EdgeLabeledGraph<F>> {
    let mut ring = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut declared = false;
    let mut raw_edges: Vec<(usize, String, String, String)> = Vec::new();
    for (no, line) in lines(text) {
        let fail = |msg: String| Error::Format { line: no, msg };
        let (kw, rest) = split_keyword(line);
        match kw {
            "ring" => {
                if ring.is_some() {
                    return Err(fail("`ring` given twice".into()));
                }
                let names: Vec<&str> = rest.split([',', ' ', '\t']).filter(|s| !s.is_empty()).collect();
                ring = Some(Ring::new(names).map_err(|e| fail(e.to_string()))?);
            }
            "vertices" => {
                declared = true;
                for v in rest.split_whitespace() {
                    if vertices.iter().any(|w| w == v) {
                        return Err(fail(format!("vertex `{v}` declared twice")));
                    }
                    vertices.push(v.to_string());
                }
            }
            "edge" => {
                let (ends, label) = rest.split_once(':').ok_or_else(|| fail("expected `edge u v : label`".into()))?;
                let ends: Vec<&str> = ends.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(fail("an edge needs exactly two endpoints".into()));
                }
                raw_edges.push((no, ends[0].to_string(), ends[1].to_string(), label.trim().to_string()));
            }
            _ => return Err(fail(format!("unknown keyword `{kw}`"))),
        }
    }
    let ring = ring.ok_or(Error::Format { line: 0, msg: "missing `ring` line".into() })?;
    if !declared {
        for (_, a, b, _) in &raw_edges {
            for v in [a, b] {
                if !vertices.contains(v) {
                    vertices.push(v.clone());
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (no, a, b, label) in raw_edges {
        let fail = |msg: String| Error::Format { line: no, msg };
        let idx =
            |v: &str| vertices.iter().position(|w| w == v).ok_or_else(|| fail(format!("undeclared vertex `{v}`")));
        let (u, v) = (idx(&a)?, idx(&b)?);
        if u == v {
            return Err(fail(format!("loop at `{a}`")));
        }
        let p = parse_poly(&label, &ring).map_err(|e| fail(e.to_string()))?;
        if p.is_zero() {
            return Err(fail("edge labels must be nonzero".into()));
        }
        edges.push((u, v, p));
    }
    EdgeLabeledGraph::new(&ring, vertices, edges)
}

/// Reads a spline for `g`; every vertex must be labeled exactly once.
pub fn parse_spline<F: Field>(text: &str, g: &EdgeLabeledGraph<F>) -> Result<Spline<F>> {
    let mut values = vec![None; g.num_vertices()];
    for (no, line) in lines(text) {
        let fail = |msg: String| Error::Format { line: no, msg };
        let (v, poly) = line.split_once(':').ok_or_else(|| fail("expected `vertex : polynomial`".into()))?;
        let v = v.trim();
        let i = g.vertex_index(v).ok_or_else(|| fail(format!("unknown vertex `{v}`")))?;
        if values[i].is_some() {
            return Err(fail(format!("vertex `{v}` labeled twice")));
        }
        values[i] = Some(parse_poly(poly.trim(), g.ring()).map_err(|e| fail(e.to_string()))?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::MissingVertexLabel(g.vertices()[i].clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spline::new(values))
}
