use std::sync::Arc;

use super::buchberger::{self, Lead};
use super::{buchberger_with_cofactors, ModuleElement, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Ring};

/// Generators of `{ a in R^s : sum a_k * gen_k = 0 }` for the `s` generators
/// of `m`, with twists equal to the generator degrees when `m` is graded.
///
/// Built from the Schreyer syzygies of the reduced basis pulled back
/// through the cofactor matrix, plus one relation per original generator
/// expressing it through the basis; then interreduced.
pub fn syzygies<F: Field>(m: &Submodule<F>) -> Result<Submodule<F>> {
    let s = m.generators().len();
    if s == 0 {
        return Err(Error::Hypothesis("syzygies of an empty generator list".into()));
    }
    let ring = m.ring().clone();
    let twists: Vec<i64> = match m.generator_degrees() {
        Ok(ds) => ds.into_iter().map(|d| d.unwrap_or(0)).collect(),
        Err(_) => vec![0; s],
    };

    let gb = buchberger_with_cofactors(m);
    let g = gb.elements();
    let t = gb.transform().unwrap();
    let ls = buchberger::leads(g);
    let mut out: Vec<ModuleElement<F>> = Vec::new();

    let pull_back = |coeffs: &[Polynomial<F>]| -> ModuleElement<F> {
        let mut acc = vec![Polynomial::zero(&ring); s];
        for (c, row) in coeffs.iter().zip(t) {
            if c.is_zero() {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row) {
                if !r.is_zero() {
                    *a = &*a + &(c * r);
                }
            }
        }
        ModuleElement { coords: acc }
    };

    for j in 0..g.len() {
        for i in 0..j {
            if ls[i].pos != ls[j].pos {
                continue;
            }
            let l = ls[i].mono.lcm(&ls[j].mono);
            // relations through an earlier leading term are implied
            if (0..i).any(|k| ls[k].pos == ls[i].pos && ls[k].mono.divides(&l)) {
                continue;
            }
            let sv = buchberger::s_vector(&g[i], &ls[i], &g[j], &ls[j]);
            let (q, r) = buchberger::reduce(&sv, g, &ls, true);
            debug_assert!(r.is_zero());
            let mut coeffs: Vec<Polynomial<F>> = q.unwrap().iter().map(|p| -p).collect();
            coeffs[i] = coeffs[i].add_scaled(&ls[i].inv, &l.checked_div(&ls[i].mono).unwrap(), &Polynomial::one(&ring));
            coeffs[j] = coeffs[j].add_scaled(
                &-ls[j].inv.clone(),
                &l.checked_div(&ls[j].mono).unwrap(),
                &Polynomial::one(&ring),
            );
            out.push(pull_back(&coeffs));
        }
    }

    for (k, gen) in m.generators().iter().enumerate() {
        let (q, r) = buchberger::reduce(gen, g, &ls, true);
        debug_assert!(r.is_zero());
        let mut rho = pull_back(&q.unwrap()).neg();
        rho.coords[k] = &rho.coords[k] + &Polynomial::one(&ring);
        out.push(rho);
    }

    let trimmed = interreduce(out);
    Submodule::new(&ring, s, trimmed)?.with_twists(twists)
}

/// Repeatedly reduces a vector whose leading term is divisible by another
/// vector's leading term, dropping zeros and duplicates.
pub(crate) fn interreduce<F: Field>(mut vs: Vec<ModuleElement<F>>) -> Vec<ModuleElement<F>> {
    vs.retain(|v| !v.is_zero());
    loop {
        let ls: Vec<Lead<F>> = buchberger::leads(&vs);
        let hit = (0..vs.len()).find_map(|i| {
            (0..vs.len())
                .find(|&j| {
                    j != i
                        && ls[j].pos == ls[i].pos
                        && ls[j].mono.divides(&ls[i].mono)
                        && (ls[j].mono != ls[i].mono || j < i)
                })
                .map(|j| (i, j))
        });
        let Some((i, j)) = hit else { break };
        let t = ls[i].mono.checked_div(&ls[j].mono).unwrap();
        let c = vs[i].leading().unwrap().2.clone() * ls[j].inv.clone();
        let r = vs[i].add_scaled(&-c, &t, &vs[j]);
        if r.is_zero() {
            vs.remove(i);
        } else {
            vs[i] = r;
        }
    }
    vs
}

/// Generators of the kernel of the `rows.len() x ncols` matrix `rows`,
/// i.e. the syzygies of its columns. A matrix with no rows has the whole
/// of `R^ncols` as kernel.
///
/// With `col_twists` the returned module carries those twists; otherwise
/// the column degrees (zero-row-twist convention, zero columns get 0).
pub fn kernel_of_matrix<F: Field>(
    ring: &Arc<Ring>,
    rows: &[Vec<Polynomial<F>>],
    ncols: usize,
    col_twists: Option<&[i64]>,
) -> Result<Submodule<F>> {
    if ncols == 0 {
        return Err(Error::Hypothesis("matrix has no columns".into()));
    }
    for row in rows {
        if row.len() != ncols {
            return Err(Error::RankMismatch { expected: ncols, found: row.len() });
        }
    }
    let kernel = if rows.is_empty() {
        let gens = (0..ncols).map(|k| ModuleElement::unit(ring, ncols, k)).collect();
        Submodule::new(ring, ncols, gens)?
    } else {
        let columns: Vec<ModuleElement<F>> = (0..ncols)
            .map(|c| ModuleElement::new(rows.iter().map(|r| r[c].clone()).collect()))
            .collect::<Result<_>>()?;
        syzygies(&Submodule::new(ring, rows.len(), columns)?)?
    };
    match col_twists {
        Some(t) => kernel.with_twists(t.to_vec()),
        None => Ok(kernel),
    }
}
