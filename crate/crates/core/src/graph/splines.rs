use serde::Serialize;

use super::EdgeLabeledGraph;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{multivariate_divide, Polynomial};

/// A vertex labeling, indexed like the graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spline<F: Field> {
    values: Vec<Polynomial<F>>,
}

impl<F: Field> Spline<F> {
    pub fn new(values: Vec<Polynomial<F>>) -> Self {
        Spline { values }
    }

    /// The spline `1` at every vertex.
    pub fn trivial(g: &EdgeLabeledGraph<F>) -> Self {
        Spline { values: vec![Polynomial::one(g.ring()); g.num_vertices()] }
    }

    pub fn zero(g: &EdgeLabeledGraph<F>) -> Self {
        Spline { values: vec![Polynomial::zero(g.ring()); g.num_vertices()] }
    }

    pub fn values(&self) -> &[Polynomial<F>] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &Polynomial<F> {
        &self.values[v]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, r: &Polynomial<F>) -> Self {
        Spline { values: self.values.iter().map(|f| r * f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Spline { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Spline { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeFailure<F: Field> {
    pub edge: usize,
    pub difference: Polynomial<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplineReport<F: Field> {
    pub valid: bool,
    pub failures: Vec<EdgeFailure<F>>,
}

/// Checks `label | f(u) - f(v)` on every edge.
pub fn verify_spline<F: Field>(g: &EdgeLabeledGraph<F>, f: &Spline<F>) -> Result<SplineReport<F>> {
    if f.values.len() != g.num_vertices() {
        let missing = g.vertices().get(f.values.len()).cloned().unwrap_or_default();
        return Err(Error::MissingVertexLabel(missing));
    }
    let mut failures = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let diff = &f.values[e.u] - &f.values[e.v];
        let ok = diff.is_zero() || multivariate_divide(&diff, std::slice::from_ref(&e.label))?.remainder.is_zero();
        if !ok {
            failures.push(EdgeFailure { edge: k, difference: diff });
        }
    }
    Ok(SplineReport { valid: failures.is_empty(), failures })
}
