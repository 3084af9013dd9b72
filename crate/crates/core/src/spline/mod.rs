//! The spline module of an edge-labeled graph: generators, cycle ranks,
//! freeness certificates and graded series.
//!
//! For a connected graph the splines vanishing at a base vertex are
//! isomorphic to the kernel `B` of the boundary matrix; a kernel vector
//! `v` becomes the spline obtained by walking a spanning tree from the base
//! vertex, adding `v_e * label_e` along each edge in its stored direction.

mod freeness;
mod series;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{boundary_matrix, cycle_basis, CycleBasisMode, EdgeLabeledGraph, Spline};
use crate::groebner::{minimal_generators, ModuleElement, Submodule};
use crate::poly::linalg::linear_span_dim;
use crate::poly::{multivariate_divide, Polynomial};

pub use freeness::{decide_freeness, FreenessCertificate, FreenessOptions, Rule, RuleCheck, Verdict};
pub use series::{
    graded_series_report, pd_relation_report, spline_module_series, ComponentSeries, GradedSeriesReport, PdBranch,
    PdRelationReport,
};

/// Lowest-index vertex of every component.
pub fn base_vertices<F: Field>(g: &EdgeLabeledGraph<F>) -> Vec<usize> {
    let comp = g.components();
    let mut bases = Vec::new();
    for (v, &c) in comp.iter().enumerate() {
        if c == bases.len() {
            bases.push(v);
        }
    }
    bases
}

/// The spline attached to a kernel vector `v`, zero at the base vertex of
/// each component (`base` replaces the base vertex of its own component).
pub fn syzygy_to_spline<F: Field>(
    g: &EdgeLabeledGraph<F>,
    v: &ModuleElement<F>,
    base: Option<usize>,
) -> Result<Spline<F>> {
    if v.rank() != g.num_edges() {
        return Err(Error::RankMismatch { expected: g.num_edges(), found: v.rank() });
    }
    let a = boundary_matrix(g, &cycle_basis(g, CycleBasisMode::Minimum));
    if !a.annihilates(v.coords()) {
        return Err(Error::NotInKernel);
    }
    let comp = g.components();
    let mut roots = base_vertices(g);
    if let Some(b) = base {
        if b >= g.num_vertices() {
            return Err(Error::Hypothesis(format!("base vertex index {b} out of range")));
        }
        roots[comp[b]] = b;
    }
    let inc = g.incidence();
    let mut values: Vec<Option<Polynomial<F>>> = vec![None; g.num_vertices()];
    for r in roots {
        values[r] = Some(Polynomial::zero(g.ring()));
        let mut queue = VecDeque::from([r]);
        while let Some(w) = queue.pop_front() {
            for &e in &inc[w] {
                let edge = g.edge(e);
                let o = edge.other(w);
                if values[o].is_some() {
                    continue;
                }
                let step = v.coord(e) * &edge.label;
                let fw = values[w].as_ref().unwrap();
                values[o] = Some(if w == edge.u { fw + &step } else { fw - &step });
                queue.push_back(o);
            }
        }
    }
    Ok(Spline::new(values.into_iter().map(Option::unwrap).collect()))
}

/// The kernel vector of a spline: `v_e = (f(v) - f(u)) / label_e`.
pub fn spline_to_syzygy<F: Field>(g: &EdgeLabeledGraph<F>, f: &Spline<F>) -> Result<ModuleElement<F>> {
    let mut coords = Vec::with_capacity(g.num_edges());
    for (k, e) in g.edges().iter().enumerate() {
        let diff = f.value(e.v) - f.value(e.u);
        let d = multivariate_divide(&diff, std::slice::from_ref(&e.label))?;
        if !d.remainder.is_zero() {
            return Err(Error::Hypothesis(format!("not a spline: condition fails on edge e{}", k + 1)));
        }
        coords.push(d.quotients.into_iter().next().unwrap());
    }
    if coords.is_empty() {
        return Err(Error::Hypothesis("graph has no edges".into()));
    }
    ModuleElement::new(coords)
}

/// Where a spline generator came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum GeneratorSource<F: Field> {
    Trivial,
    /// Indicator of a component other than the first.
    Component(usize),
    Syzygy(ModuleElement<F>),
}

#[derive(Clone, Debug, Serialize)]
pub struct SplineBasis<F: Field> {
    pub generators: Vec<Spline<F>>,
    pub sources: Vec<GeneratorSource<F>>,
    pub base_vertex: usize,
    pub minimal: bool,
}

/// Kernel of the boundary matrix, graded by `deg l_e - min deg` when the
/// labels are homogeneous. `None` for a graph without edges.
pub fn syzygy_module<F: Field>(g: &EdgeLabeledGraph<F>, mode: CycleBasisMode) -> Result<Option<Submodule<F>>> {
    if g.num_edges() == 0 {
        return Ok(None);
    }
    let a = boundary_matrix(g, &cycle_basis(g, mode));
    let twists = g.edge_twists().ok();
    a.kernel(twists.as_deref()).map(Some)
}

/// `1`, the indicators of components after the first, and the splines of
/// the kernel generators (a minimal set when the labels are homogeneous).
pub fn spline_module_generators<F: Field>(g: &EdgeLabeledGraph<F>, base: Option<usize>) -> Result<SplineBasis<F>> {
    if g.num_vertices() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let comp = g.components();
    let base_vertex = base.unwrap_or(0);
    if base_vertex >= g.num_vertices() {
        return Err(Error::Hypothesis(format!("base vertex index {base_vertex} out of range")));
    }
    let mut generators = vec![Spline::trivial(g)];
    let mut sources = vec![GeneratorSource::Trivial];
    let ncomp = g.num_components();
    for c in (0..ncomp).filter(|&c| c != comp[base_vertex]) {
        let values =
            comp.iter().map(|&k| if k == c { Polynomial::one(g.ring()) } else { Polynomial::zero(g.ring()) }).collect();
        generators.push(Spline::new(values));
        sources.push(GeneratorSource::Component(c));
    }
    let mut minimal = false;
    if let Some(b) = syzygy_module(g, CycleBasisMode::Minimum)? {
        let gens = if b.is_homogeneous() {
            minimal = true;
            minimal_generators(&b)?
        } else {
            b
        };
        for v in gens.generators() {
            generators.push(syzygy_to_spline(g, v, Some(base_vertex))?);
            sources.push(GeneratorSource::Syzygy(v.clone()));
        }
    }
    Ok(SplineBasis { generators, sources, base_vertex, minimal })
}

/// Dimension of the linear span of the labels.
pub fn cycle_rank<F: Field>(labels: &[Polynomial<F>]) -> Result<usize> {
    linear_span_dim(labels)
}

/// Rank of every cycle of the minimum cycle basis.
pub fn basis_cycle_ranks<F: Field>(g: &EdgeLabeledGraph<F>) -> Result<Vec<usize>> {
    cycle_basis(g, CycleBasisMode::Minimum)
        .cycles()
        .iter()
        .map(|c| cycle_rank(&c.edges().iter().map(|&e| g.edge(e).label.clone()).collect::<Vec<_>>()))
        .collect()
}
