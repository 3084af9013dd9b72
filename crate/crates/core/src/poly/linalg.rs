//! Exact Gaussian elimination over a field.

use std::collections::BTreeMap;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::Field;

/// Row-reduces `rows` in place to reduced echelon form and returns the pivot
/// columns.
pub fn row_reduce<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    row_reduce(&mut rows.to_vec()).len()
}

/// Basis of `{ v : M v = 0 }` for an `nrows x ncols` matrix.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

/// Incremental rank tracker: feeds vectors one at a time and reports whether
/// each one enlarges the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new() }
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` (all vectors must share a length); returns `true` when `v`
    /// was independent of what came before.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = a.clone() - f.clone() * b.clone();
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(pc) => {
                let inv = v[pc].inv().unwrap();
                for a in v.iter_mut() {
                    *a = a.clone() * inv.clone();
                }
                for (_, row) in self.rows.iter_mut() {
                    if !row[pc].is_zero() {
                        let f = row[pc].clone();
                        for (a, b) in row.iter_mut().zip(&v) {
                            *a = a.clone() - f.clone() * b.clone();
                        }
                    }
                }
                self.rows.push((pc, v));
                true
            }
        }
    }
}

/// Dimension over `k` of the span of `polys`, with the union of occurring
/// monomials (the constant monomial included) as coordinates.
pub fn linear_span_dim<F: Field>(polys: &[Polynomial<F>]) -> Result<usize> {
    if let Some(first) = polys.first() {
        if polys.iter().any(|p| !super::same_ring(p.ring(), first.ring())) {
            return Err(Error::RingMismatch);
        }
    }
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let n = index.len();
            index.entry(m).or_insert(n);
        }
    }
    let rows: Vec<Vec<F>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![F::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    Ok(rank(&rows))
}
