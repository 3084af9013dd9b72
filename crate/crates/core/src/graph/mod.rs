//! Edge-labeled graphs, cycle bases, the boundary matrix and splines.
//!
//! Vertices and edges are indexed from zero internally; user-facing text
//! numbers edges `e1, e2, ...` in declaration order. Every edge is stored
//! as `(u, v)` with `u < v`, and a cycle traversing it from `u` to `v`
//! contributes `+label` to its row of the boundary matrix.

mod cycles;
mod format;
mod splines;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{kernel_of_matrix, Submodule};
use crate::poly::{same_ring, Homogeneity, Polynomial, Ring};

pub use cycles::{classify_edges, cycle_basis, simple_cycles, Cycle, CycleBasis, CycleBasisMode, EdgeClass};
pub use format::{parse_graph, parse_spline};
pub use splines::{verify_spline, EdgeFailure, Spline, SplineReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge<F: Field> {
    pub u: usize,
    pub v: usize,
    pub label: Polynomial<F>,
}

impl<F: Field> Edge<F> {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeledGraph<F: Field> {
    ring: Arc<Ring>,
    vertices: Vec<String>,
    edges: Vec<Edge<F>>,
}

impl<F: Field> EdgeLabeledGraph<F> {
    /// Edges are `(u, v, label)` with vertex indices; loops and zero labels
    /// are rejected, parallel edges are allowed.
    pub fn new(ring: &Arc<Ring>, vertices: Vec<String>, edges: Vec<(usize, usize, Polynomial<F>)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let mut out = Vec::with_capacity(edges.len());
        for (k, (u, v, label)) in edges.into_iter().enumerate() {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::InvalidGraph(format!("edge e{} has an endpoint out of range", k + 1)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge e{} is a loop at `{}`", k + 1, vertices[u])));
            }
            if !same_ring(label.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if label.is_zero() {
                return Err(Error::InvalidGraph(format!("edge e{} has the zero label", k + 1)));
            }
            out.push(Edge { u: u.min(v), v: u.max(v), label });
        }
        Ok(EdgeLabeledGraph { ring: ring.clone(), vertices, edges: out })
    }

    /// Same as [`new`](Self::new) with endpoints given by name.
    pub fn from_named(ring: &Arc<Ring>, vertices: &[&str], edges: Vec<(&str, &str, Polynomial<F>)>) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |n: &str| {
            names.iter().position(|v| v == n).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{n}`")))
        };
        let es = edges.into_iter().map(|(a, b, l)| Ok((idx(a)?, idx(b)?, l))).collect::<Result<Vec<_>>>()?;
        Self::new(ring, names, es)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<F>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge<F> {
        &self.edges[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn labels(&self) -> Vec<Polynomial<F>> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    /// Incident edge ids of every vertex, in increasing id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            inc[e.u].push(k);
            inc[e.v].push(k);
        }
        inc
    }

    /// Component id per vertex; components are numbered by their lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let inc = self.incidence();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(w) = queue.pop_front() {
                for &e in &inc[w] {
                    let o = self.edges[e].other(w);
                    if comp[o] == usize::MAX {
                        comp[o] = next;
                        queue.push_back(o);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// `|E| - |V| + #components`
    pub fn cycle_space_dim(&self) -> usize {
        self.edges.len() + self.num_components() - self.vertices.len()
    }

    /// Common degree of all labels if they are homogeneous of one degree.
    pub fn common_label_degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in &self.edges {
            let d = e.label.homogeneity().degree()?;
            if deg.is_some_and(|x| x != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    pub fn labels_homogeneous(&self) -> bool {
        self.edges.iter().all(|e| matches!(e.label.homogeneity(), Homogeneity::Homogeneous(_)))
    }

    /// Twists `deg l_e - min_e deg l_e` of the edge coordinates, making the
    /// kernel of the boundary matrix graded with degree-0 generators when
    /// all labels share one degree.
    pub fn edge_twists(&self) -> Result<Vec<i64>> {
        let degs = self
            .edges
            .iter()
            .map(|e| match e.label.homogeneity() {
                Homogeneity::Homogeneous(d) => Ok(d as i64),
                _ => Err(Error::Inhomogeneous(format!("edge label `{}`", e.label))),
            })
            .collect::<Result<Vec<i64>>>()?;
        let lo = degs.iter().copied().min().unwrap_or(0);
        Ok(degs.into_iter().map(|d| d - lo).collect())
    }

    /// The graph in the text format read by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = format!("ring {}\nvertices {}\n", self.ring.names().join(", "), self.vertices.join(" "));
        for e in &self.edges {
            s.push_str(&format!("edge {} {} : {}\n", self.vertices[e.u], self.vertices[e.v], e.label));
        }
        s
    }
}

/// Rows indexed by basis cycles, columns by edges; entries `0` or `±label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix<F: Field> {
    ring: Arc<Ring>,
    rows: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> BoundaryMatrix<F> {
    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial<F>>>) -> Self {
        BoundaryMatrix { ring: ring.clone(), rows }
    }

    pub fn rows(&self) -> &[Vec<Polynomial<F>>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.rows[i][j]
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// `A v`
    pub fn apply(&self, v: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(Polynomial::zero(&self.ring), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn annihilates(&self, v: &[Polynomial<F>]) -> bool {
        self.apply(v).iter().all(Polynomial::is_zero)
    }

    /// Generators of `ker A`, with the given column twists if any.
    pub fn kernel(&self, col_twists: Option<&[i64]>) -> Result<Submodule<F>> {
        kernel_of_matrix(&self.ring, &self.rows, self.ncols(), col_twists)
    }
}

impl<F: Field> fmt::Display for BoundaryMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let ncols = self.ncols();
        let widths: Vec<usize> = (0..ncols).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
        for row in &cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for BoundaryMatrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// The boundary matrix of `g` for `basis`. An acyclic graph gets a single
/// zero row.
pub fn boundary_matrix<F: Field>(g: &EdgeLabeledGraph<F>, basis: &CycleBasis) -> BoundaryMatrix<F> {
    let zero = Polynomial::zero(&g.ring);
    let mut rows: Vec<Vec<Polynomial<F>>> = basis
        .cycles()
        .iter()
        .map(|c| {
            let mut row = vec![zero.clone(); g.num_edges()];
            for (&e, &s) in c.edges().iter().zip(c.signs()) {
                row[e] = if s > 0 { g.edges[e].label.clone() } else { -&g.edges[e].label };
            }
            row
        })
        .collect();
    if rows.is_empty() {
        rows.push(vec![zero; g.num_edges()]);
    }
    BoundaryMatrix { ring: g.ring.clone(), rows }
}
