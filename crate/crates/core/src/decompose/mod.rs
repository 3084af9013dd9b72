//! Removal of interior edges from cycles, splitting off cycles, and the
//! explicit isomorphisms between the kernels of the boundary matrices
//! before and after each removal.
//!
//! A removal never touches the graph itself: it zeroes one entry of the
//! boundary matrix (one edge in one cycle's row). Edge classes are read off
//! the current matrix: an edge is interior when two or more rows have a
//! nonzero entry in its column.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{
    boundary_matrix, cycle_basis, BoundaryMatrix, CycleBasis, CycleBasisMode, EdgeClass, EdgeLabeledGraph,
};
use crate::groebner::{ideal_membership, ModuleElement, Submodule};
use crate::poly::{Polynomial, Ring};

/// One accepted removal: `entry = sum_k witness[k] * entry(exterior[k])`,
/// all entries taken with the signs of the cycle's row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalStep<F: Field> {
    pub cycle: usize,
    pub edge: usize,
    pub entry: Polynomial<F>,
    pub exterior: Vec<usize>,
    pub exterior_entries: Vec<Polynomial<F>>,
    pub witness: Vec<Polynomial<F>>,
}

impl<F: Field> RemovalStep<F> {
    /// The re-expansion identity behind the step.
    pub fn witness_holds(&self) -> bool {
        let ring = self.entry.ring();
        let sum =
            self.witness.iter().zip(&self.exterior_entries).fold(Polynomial::zero(ring), |acc, (c, a)| &acc + &(c * a));
        sum == self.entry
    }

    fn corrections(&self, v: &ModuleElement<F>, sign: bool) -> ModuleElement<F> {
        let mut coords = v.coords().to_vec();
        let r = v.coord(self.edge).clone();
        for (&e, c) in self.exterior.iter().zip(&self.witness) {
            let delta = c * &r;
            coords[e] = if sign { &coords[e] + &delta } else { &coords[e] - &delta };
        }
        ModuleElement::new(coords).expect("same ring")
    }

    /// `phi`: each exterior coordinate `e` of the cycle gains `c_e * v_removed`.
    pub fn apply_phi(&self, v: &ModuleElement<F>) -> ModuleElement<F> {
        self.corrections(v, true)
    }

    /// `phi^-1`: subtracts the same corrections.
    pub fn apply_phi_inverse(&self, v: &ModuleElement<F>) -> ModuleElement<F> {
        self.corrections(v, false)
    }
}

/// A graph together with its (partially zeroed) boundary matrix.
#[derive(Clone, Debug)]
pub struct ReductionState<F: Field> {
    graph: EdgeLabeledGraph<F>,
    basis: CycleBasis,
    matrix: BoundaryMatrix<F>,
    steps: Vec<RemovalStep<F>>,
}

impl<F: Field> ReductionState<F> {
    pub fn new(graph: &EdgeLabeledGraph<F>, mode: CycleBasisMode) -> Self {
        let basis = cycle_basis(graph, mode);
        let matrix = boundary_matrix(graph, &basis);
        ReductionState { graph: graph.clone(), basis, matrix, steps: Vec::new() }
    }

    pub fn graph(&self) -> &EdgeLabeledGraph<F> {
        &self.graph
    }

    pub fn basis(&self) -> &CycleBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &BoundaryMatrix<F> {
        &self.matrix
    }

    pub fn steps(&self) -> &[RemovalStep<F>] {
        &self.steps
    }

    fn nrows(&self) -> usize {
        self.basis.len()
    }

    /// Edges with a nonzero entry in row `i`, by id.
    pub fn support(&self, i: usize) -> Vec<usize> {
        (0..self.graph.num_edges()).filter(|&e| !self.matrix.entry(i, e).is_zero()).collect()
    }

    pub fn row_count(&self, e: usize) -> usize {
        (0..self.nrows()).filter(|&i| !self.matrix.entry(i, e).is_zero()).count()
    }

    pub fn classify(&self) -> Vec<EdgeClass> {
        (0..self.graph.num_edges()).map(|e| EdgeClass::from_count(self.row_count(e))).collect()
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.graph.num_edges()).filter(|&e| self.row_count(e) >= 2).collect()
    }

    /// Decides whether `edge` can be removed from basis cycle `cycle`: its
    /// signed entry must lie in the ideal of the signed entries of the
    /// cycle's exterior edges.
    pub fn is_removable(&self, cycle: usize, edge: usize) -> Result<Option<RemovalStep<F>>> {
        if cycle >= self.nrows() || edge >= self.graph.num_edges() || !self.basis.cycles()[cycle].contains(edge) {
            return Err(Error::EdgeNotOnCycle { cycle, edge });
        }
        if self.row_count(edge) < 2 {
            return Err(Error::EdgeNotInterior(edge));
        }
        let entry = self.matrix.entry(cycle, edge).clone();
        let exterior: Vec<usize> =
            self.support(cycle).into_iter().filter(|&e| e != edge && self.row_count(e) == 1).collect();
        let exterior_entries: Vec<Polynomial<F>> =
            exterior.iter().map(|&e| self.matrix.entry(cycle, e).clone()).collect();
        let ring = self.graph.ring();
        if entry.is_zero() {
            let witness = vec![Polynomial::zero(ring); exterior.len()];
            return Ok(Some(RemovalStep { cycle, edge, entry, exterior, exterior_entries, witness }));
        }
        if exterior.is_empty() {
            return Ok(None);
        }
        let ideal = Submodule::ideal(ring, exterior_entries.clone())?;
        let m = ideal_membership(&entry, &ideal)?;
        Ok(m.witness.map(|witness| RemovalStep { cycle, edge, entry, exterior, exterior_entries, witness }))
    }

    fn check_step(&self, step: &RemovalStep<F>) -> Result<()> {
        if step.cycle >= self.nrows() || step.edge >= self.graph.num_edges() {
            return Err(Error::StaleStep);
        }
        let cur = self.matrix.entry(step.cycle, step.edge);
        if cur.is_zero() || *cur != step.entry || self.row_count(step.edge) < 2 {
            return Err(Error::StaleStep);
        }
        for (&e, a) in step.exterior.iter().zip(&step.exterior_entries) {
            if self.matrix.entry(step.cycle, e) != a || self.row_count(e) != 1 {
                return Err(Error::StaleStep);
            }
        }
        if !step.witness_holds() {
            return Err(Error::StaleStep);
        }
        Ok(())
    }

    /// Zeroes the step's entry in place.
    pub fn apply(&mut self, step: RemovalStep<F>) -> Result<()> {
        self.check_step(&step)?;
        let mut rows = self.matrix.rows().to_vec();
        rows[step.cycle][step.edge] = Polynomial::zero(self.graph.ring());
        self.matrix = BoundaryMatrix::from_rows(self.graph.ring(), rows);
        self.steps.push(step);
        Ok(())
    }

    /// Rows whose support has no interior edge, with their surviving edges.
    pub fn splittable(&self) -> Vec<usize> {
        (0..self.nrows())
            .filter(|&i| {
                let s = self.support(i);
                !s.is_empty() && s.iter().all(|&e| self.row_count(e) == 1)
            })
            .collect()
    }
}

/// Applies one validated removal, returning the new state.
pub fn remove_edge<F: Field>(state: &ReductionState<F>, step: RemovalStep<F>) -> Result<ReductionState<F>> {
    let mut next = state.clone();
    next.apply(step)?;
    Ok(next)
}

/// A cycle made disjoint: its surviving edges (in traversal order), with
/// their labels and signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCycle<F: Field> {
    pub row: usize,
    pub edges: Vec<usize>,
    pub labels: Vec<Polynomial<F>>,
    pub signs: Vec<i8>,
}

impl<F: Field> SplitCycle<F> {
    /// The cycle as a standalone graph: removed edges deleted and their
    /// endpoints identified.
    pub fn to_graph(&self, ring: &Arc<Ring>) -> Result<EdgeLabeledGraph<F>> {
        let n = self.edges.len();
        let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n, self.labels[i].clone())).collect();
        EdgeLabeledGraph::new(ring, names, edges)
    }
}

/// The graph after splitting off every cycle without interior edges. The
/// boundary matrix is unchanged by splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult<F: Field> {
    pub cycles: Vec<SplitCycle<F>>,
    pub remaining_rows: Vec<usize>,
    pub free_edges: Vec<usize>,
    pub matrix: Vec<Vec<Polynomial<F>>>,
}

pub fn split_off<F: Field>(state: &ReductionState<F>) -> Result<SplitResult<F>> {
    let rows = state.splittable();
    let has_cycles = (0..state.nrows()).any(|i| !state.support(i).is_empty());
    if rows.is_empty() && has_cycles {
        return Err(Error::NoSplittableCycle);
    }
    let cycles = rows
        .iter()
        .map(|&i| {
            let c = &state.basis.cycles()[i];
            let (edges, signs): (Vec<usize>, Vec<i8>) = c
                .edges()
                .iter()
                .zip(c.signs())
                .filter(|(&e, _)| !state.matrix.entry(i, e).is_zero())
                .map(|(&e, &s)| (e, s))
                .unzip();
            let labels = edges.iter().map(|&e| state.graph.edge(e).label.clone()).collect();
            SplitCycle { row: i, edges, labels, signs }
        })
        .collect();
    let remaining_rows = (0..state.nrows()).filter(|i| !rows.contains(i) && !state.support(*i).is_empty()).collect();
    let free_edges = (0..state.graph.num_edges()).filter(|&e| state.row_count(e) == 0).collect();
    Ok(SplitResult { cycles, remaining_rows, free_edges, matrix: state.matrix.rows().to_vec() })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalOrder {
    /// First removable (cycle, edge) pair by cycle index, then edge id.
    #[default]
    Greedy,
    /// Backtracking over removal sequences; graphs with at most 12 edges.
    Exhaustive,
}

pub const EXHAUSTIVE_EDGE_LIMIT: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult<F: Field> {
    pub complete: bool,
    pub steps: Vec<RemovalStep<F>>,
    pub cycles: Vec<SplitCycle<F>>,
    pub free_edges: Vec<usize>,
    pub interior_remaining: Vec<usize>,
    pub matrix: Vec<Vec<Polynomial<F>>>,
    pub order: RemovalOrder,
}

impl<F: Field> DecompositionResult<F> {
    /// Number of disjoint cycles.
    pub fn s(&self) -> usize {
        self.cycles.len()
    }

    /// Number of free edges.
    pub fn p(&self) -> usize {
        self.free_edges.len()
    }
}

fn first_removal<F: Field>(state: &ReductionState<F>) -> Result<Option<RemovalStep<F>>> {
    let interior: HashSet<usize> = state.interior_edges().into_iter().collect();
    for i in 0..state.nrows() {
        for e in state.support(i) {
            if interior.contains(&e) {
                if let Some(step) = state.is_removable(i, e)? {
                    return Ok(Some(step));
                }
            }
        }
    }
    Ok(None)
}

fn all_removals<F: Field>(state: &ReductionState<F>) -> Result<Vec<RemovalStep<F>>> {
    let interior: HashSet<usize> = state.interior_edges().into_iter().collect();
    let mut out = Vec::new();
    for i in 0..state.nrows() {
        for e in state.support(i) {
            if interior.contains(&e) {
                if let Some(step) = state.is_removable(i, e)? {
                    out.push(step);
                }
            }
        }
    }
    Ok(out)
}

fn greedy<F: Field>(mut state: ReductionState<F>) -> Result<ReductionState<F>> {
    while !state.interior_edges().is_empty() {
        match first_removal(&state)? {
            Some(step) => state.apply(step)?,
            None => break,
        }
    }
    Ok(state)
}

fn zero_pattern<F: Field>(state: &ReductionState<F>) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = state.steps.iter().map(|s| (s.cycle, s.edge)).collect();
    v.sort_unstable();
    v
}

fn search<F: Field>(
    state: ReductionState<F>,
    seen: &mut HashSet<Vec<(usize, usize)>>,
) -> Result<Option<ReductionState<F>>> {
    if state.interior_edges().is_empty() {
        return Ok(Some(state));
    }
    if !seen.insert(zero_pattern(&state)) {
        return Ok(None);
    }
    for step in all_removals(&state)? {
        let next = remove_edge(&state, step)?;
        if let Some(done) = search(next, seen)? {
            return Ok(Some(done));
        }
    }
    Ok(None)
}

fn finish<F: Field>(state: ReductionState<F>, order: RemovalOrder) -> Result<DecompositionResult<F>> {
    let interior_remaining = state.interior_edges();
    let complete = interior_remaining.is_empty();
    let (cycles, free_edges) = match split_off(&state) {
        Ok(split) => (split.cycles, split.free_edges),
        Err(Error::NoSplittableCycle) => {
            (Vec::new(), (0..state.graph.num_edges()).filter(|&e| state.row_count(e) == 0).collect())
        }
        Err(e) => return Err(e),
    };
    Ok(DecompositionResult {
        complete,
        steps: state.steps.clone(),
        cycles,
        free_edges,
        interior_remaining,
        matrix: state.matrix.rows().to_vec(),
        order,
    })
}

/// Removes interior edges until none are left (`complete`) or no removal
/// applies. Exhaustive order backtracks over all removal sequences.
pub fn decompose<F: Field>(
    g: &EdgeLabeledGraph<F>,
    mode: CycleBasisMode,
    order: RemovalOrder,
) -> Result<DecompositionResult<F>> {
    let start = ReductionState::new(g, mode);
    match order {
        RemovalOrder::Greedy => finish(greedy(start)?, order),
        RemovalOrder::Exhaustive => {
            if g.num_edges() > EXHAUSTIVE_EDGE_LIMIT {
                return Err(Error::Hypothesis(format!(
                    "exhaustive removal order supports at most {EXHAUSTIVE_EDGE_LIMIT} edges, got {}",
                    g.num_edges()
                )));
            }
            let greedy_end = greedy(start.clone())?;
            if greedy_end.interior_edges().is_empty() {
                return finish(greedy_end, order);
            }
            match search(start, &mut HashSet::new())? {
                Some(done) => finish(done, order),
                None => finish(greedy_end, order),
            }
        }
    }
}

/// `phi` for `step`, checking that `v` lies in the kernel of `before`.
pub fn syzygy_isomorphism<F: Field>(
    step: &RemovalStep<F>,
    before: &BoundaryMatrix<F>,
    v: &ModuleElement<F>,
) -> Result<ModuleElement<F>> {
    if !before.annihilates(v.coords()) {
        return Err(Error::NotInKernel);
    }
    Ok(step.apply_phi(v))
}

/// `phi^-1` for `step`, checking that `v` lies in the kernel of `after`.
pub fn syzygy_isomorphism_inverse<F: Field>(
    step: &RemovalStep<F>,
    after: &BoundaryMatrix<F>,
    v: &ModuleElement<F>,
) -> Result<ModuleElement<F>> {
    if !after.annihilates(v.coords()) {
        return Err(Error::NotInKernel);
    }
    Ok(step.apply_phi_inverse(v))
}

#[cfg(test)]
mod tests;
