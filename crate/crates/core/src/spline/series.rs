use std::fmt;

use serde::Serialize;

use crate::decompose::{decompose, RemovalOrder};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{CycleBasisMode, EdgeLabeledGraph};
use crate::groebner::{
    free_resolution, hilbert_series, kernel_of_matrix, syzygies, RationalSeries, ResolutionTarget, Submodule,
};
use crate::poly::{Homogeneity, Polynomial};

use super::syzygy_module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdBranch {
    /// `pd R/I >= 2` and `pd B = pd R/I - 2` is checked.
    Relation,
    /// `I = R`: the presentation splits.
    UnitIdeal,
    /// `I` is principal and nonzero: the presentation splits.
    Principal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdRelationReport {
    pub pd_quotient: usize,
    pub pd_ideal: usize,
    pub pd_syzygy: usize,
    pub branch: PdBranch,
    pub relation_holds: bool,
}

impl fmt::Display for PdRelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pd R/I = {}", self.pd_quotient)?;
        writeln!(f, "pd I   = {}", self.pd_ideal)?;
        writeln!(f, "pd B   = {}", self.pd_syzygy)?;
        match self.branch {
            PdBranch::Relation => {
                write!(f, "pd B = pd R/I - 2: {}", if self.relation_holds { "holds" } else { "FAILS" })
            }
            PdBranch::UnitIdeal => write!(f, "I = R, so B is free of rank n - 1 (split)"),
            PdBranch::Principal => write!(f, "I is principal, so 0 -> B -> R^n -> I -> 0 splits and B is free"),
        }
    }
}

fn check_homogeneous<F: Field>(labels: &[Polynomial<F>]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if !matches!(l.homogeneity(), Homogeneity::Homogeneous(_)) {
            return Err(Error::Inhomogeneous(format!("label of edge e{} is {l}", i + 1)));
        }
    }
    Ok(())
}

/// Projective dimensions of `R/I`, `I` and the syzygy module `B` of the
/// labels of one cycle, with `I` the ideal they generate.
pub fn pd_relation_report<F: Field>(labels: &[Polynomial<F>]) -> Result<PdRelationReport> {
    if labels.is_empty() {
        return Err(Error::Hypothesis("a cycle needs at least one label".into()));
    }
    check_homogeneous(labels)?;
    let ring = labels[0].ring().clone();
    let ideal = Submodule::ideal(&ring, labels.to_vec())?;
    let pd_quotient = free_resolution(&ideal, ResolutionTarget::Quotient)?.length();
    let pd_ideal = free_resolution(&ideal, ResolutionTarget::Submodule)?.length();
    let b = syzygies(&ideal)?;
    let pd_syzygy = free_resolution(&b, ResolutionTarget::Submodule)?.length();
    let (branch, relation_holds) = match pd_quotient {
        0 => (PdBranch::UnitIdeal, pd_syzygy == 0),
        1 => (PdBranch::Principal, pd_syzygy == 0),
        q => (PdBranch::Relation, pd_syzygy + 2 == q),
    };
    Ok(PdRelationReport { pd_quotient, pd_ideal, pd_syzygy, branch, relation_holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentSeries {
    pub edges: Vec<usize>,
    pub series: RationalSeries,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedSeriesReport {
    pub num_vars: usize,
    pub components: usize,
    /// Smallest label degree; the kernel is graded by `deg l_e - shift`.
    pub shift: u32,
    pub common_degree: Option<u32>,
    pub hilbert_syzygy: RationalSeries,
    /// `components/(1-t)^d + t^shift * hilbert_syzygy`.
    pub hilbert_splines: RationalSeries,
    /// Computed from the spline conditions directly.
    pub hilbert_splines_direct: RationalSeries,
    pub shift_identity_holds: bool,
    /// Split cycles and free edges when the graph decomposes.
    pub cycle_series: Option<Vec<ComponentSeries>>,
    pub free_edge_series: Option<Vec<ComponentSeries>>,
    pub sum_identity_holds: Option<bool>,
}

impl fmt::Display for GradedSeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HS(B) = {}", self.hilbert_syzygy)?;
        match self.common_degree {
            Some(r) => writeln!(f, "labels share degree {r}")?,
            None => writeln!(f, "smallest label degree {}", self.shift)?,
        }
        writeln!(f, "HS(R_G) = {}", self.hilbert_splines)?;
        writeln!(f, "HS(R_G) from spline conditions = {}", self.hilbert_splines_direct)?;
        writeln!(f, "shift identity: {}", if self.shift_identity_holds { "holds" } else { "FAILS" })?;
        if let (Some(cs), Some(fs)) = (&self.cycle_series, &self.free_edge_series) {
            for c in cs {
                writeln!(f, "  cycle {}: {}", edge_list(&c.edges), c.series)?;
            }
            for c in fs {
                writeln!(f, "  free {}: {}", edge_list(&c.edges), c.series)?;
            }
        }
        match self.sum_identity_holds {
            Some(h) => write!(f, "decomposition identity: {}", if h { "holds" } else { "FAILS" }),
            None => write!(f, "decomposition identity: not applicable (graph does not decompose)"),
        }
    }
}

fn edge_list(es: &[usize]) -> String {
    es.iter().map(|e| format!("e{}", e + 1)).collect::<Vec<_>>().join(" ")
}

/// Hilbert series of the spline module, read off the kernel of
/// `(f, g) -> (f_v - f_u - l_e g_e)_e`; `g_e` carries twist `deg l_e`.
pub fn spline_module_series<F: Field>(g: &EdgeLabeledGraph<F>) -> Result<RationalSeries> {
    check_homogeneous(&g.labels())?;
    let n = g.num_vertices();
    let d = g.ring().nvars() as u32;
    if g.num_edges() == 0 {
        return Ok(RationalSeries::from_i64s(&[n as i64], d));
    }
    let ring = g.ring();
    let mut twists = vec![0i64; n];
    let mut rows = Vec::with_capacity(g.num_edges());
    for (k, e) in g.edges().iter().enumerate() {
        twists.push(e.label.total_degree().unwrap_or(0) as i64);
        let mut row = vec![Polynomial::zero(ring); n + g.num_edges()];
        row[e.v] = Polynomial::one(ring);
        row[e.u] = -Polynomial::one(ring);
        row[n + k] = -&e.label;
        rows.push(row);
    }
    let k = kernel_of_matrix(ring, &rows, n + g.num_edges(), Some(&twists))?;
    hilbert_series(&k)
}

fn cycle_series<F: Field>(labels: &[Polynomial<F>], shift: u32) -> Result<RationalSeries> {
    let ring = labels[0].ring().clone();
    let twists: Vec<i64> = labels.iter().map(|l| l.total_degree().unwrap_or(0) as i64 - shift as i64).collect();
    let b = syzygies(&Submodule::ideal(&ring, labels.to_vec())?)?;
    let b = Submodule::new(&ring, labels.len(), b.generators().to_vec())?.with_twists(twists)?;
    hilbert_series(&b)
}

/// Hilbert series of `B` and of the spline module, the degree-shift
/// identity, and, when the graph decomposes, the sum over split cycles and
/// free edges.
pub fn graded_series_report<F: Field>(g: &EdgeLabeledGraph<F>, order: RemovalOrder) -> Result<GradedSeriesReport> {
    let labels = g.labels();
    check_homogeneous(&labels)?;
    let d = g.ring().nvars() as u32;
    let shift = labels.iter().filter_map(Polynomial::total_degree).min().unwrap_or(0);
    let hilbert_syzygy = match syzygy_module(g, CycleBasisMode::Minimum)? {
        Some(b) => hilbert_series(&b)?,
        None => RationalSeries::zero(d),
    };
    let components = g.num_components();
    let hilbert_splines = RationalSeries::from_i64s(&[components as i64], d).add(&hilbert_syzygy.shifted(shift as i64));
    let hilbert_splines_direct = spline_module_series(g)?;
    let shift_identity_holds = hilbert_splines == hilbert_splines_direct;

    let (mut cycle_series_out, mut free_series, mut sum_identity_holds) = (None, None, None);
    if g.num_edges() > 0 {
        let res = decompose(g, CycleBasisMode::Minimum, order)?;
        if res.complete {
            let mut cs = Vec::new();
            for c in &res.cycles {
                let signed: Vec<Polynomial<F>> =
                    c.labels.iter().zip(&c.signs).map(|(l, &s)| if s < 0 { -l } else { l.clone() }).collect();
                cs.push(ComponentSeries { edges: c.edges.clone(), series: cycle_series(&signed, shift)? });
            }
            let fs: Vec<ComponentSeries> = res
                .free_edges
                .iter()
                .map(|&e| {
                    let w = g.edge(e).label.total_degree().unwrap_or(0) as i64 - shift as i64;
                    ComponentSeries { edges: vec![e], series: RationalSeries::monomial(w, d) }
                })
                .collect();
            let total = cs.iter().chain(&fs).fold(RationalSeries::zero(d), |acc, c| acc.add(&c.series));
            sum_identity_holds = Some(total == hilbert_syzygy);
            cycle_series_out = Some(cs);
            free_series = Some(fs);
        }
    }
    Ok(GradedSeriesReport {
        num_vars: d as usize,
        components,
        shift,
        common_degree: g.common_label_degree(),
        hilbert_syzygy,
        hilbert_splines,
        hilbert_splines_direct,
        shift_identity_holds,
        cycle_series: cycle_series_out,
        free_edge_series: free_series,
        sum_identity_holds,
    })
}
