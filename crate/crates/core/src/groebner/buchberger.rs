use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::ModuleElement;
use crate::field::Field;
use crate::poly::{Monomial, Polynomial, Ring};

pub(crate) struct Lead<F> {
    pub pos: usize,
    pub mono: Monomial,
    pub inv: F,
}

pub(crate) fn leads<F: Field>(elems: &[ModuleElement<F>]) -> Vec<Lead<F>> {
    elems
        .iter()
        .map(|e| {
            let (pos, m, c) = e.leading().expect("nonzero basis element");
            Lead { pos, mono: m.clone(), inv: c.inv().unwrap() }
        })
        .collect()
}

/// Full reduction of `v` by `basis`. Returns the quotients (when asked) and
/// the remainder, in which no term is divisible by a leading term of the
/// same position.
pub(crate) fn reduce<F: Field>(
    v: &ModuleElement<F>,
    basis: &[ModuleElement<F>],
    leads: &[Lead<F>],
    track: bool,
) -> (Option<Vec<Polynomial<F>>>, ModuleElement<F>) {
    let ring = v.ring().clone();
    let m = v.rank();
    let mut p = v.coords.clone();
    let mut rem = vec![Polynomial::zero(&ring); m];
    let mut q: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); basis.len()];
    for pos in 0..m {
        while let Some((mono, c)) = p[pos].leading_term().map(|(a, b)| (a.clone(), b.clone())) {
            let hit = leads.iter().enumerate().find_map(|(j, l)| {
                if l.pos == pos {
                    mono.checked_div(&l.mono).map(|t| (j, t))
                } else {
                    None
                }
            });
            match hit {
                Some((j, t)) => {
                    let coeff = c * leads[j].inv.clone();
                    let neg = -coeff.clone();
                    for (pk, bk) in p[pos..m].iter_mut().zip(&basis[j].coords[pos..m]) {
                        if !bk.is_zero() {
                            *pk = pk.add_scaled(&neg, &t, bk);
                        }
                    }
                    if track {
                        q[j].push((t, coeff));
                    }
                }
                None => {
                    p[pos].pop_leading();
                    rem[pos].push_trailing(mono, c);
                }
            }
        }
    }
    let quotients = track.then(|| q.into_iter().map(|ts| Polynomial::from_terms(&ring, ts)).collect());
    (quotients, ModuleElement { coords: rem })
}

/// `(L/lm_i)/lc_i * g_i - (L/lm_j)/lc_j * g_j` with `L = lcm(lm_i, lm_j)`.
pub(crate) fn s_vector<F: Field>(
    gi: &ModuleElement<F>,
    li: &Lead<F>,
    gj: &ModuleElement<F>,
    lj: &Lead<F>,
) -> ModuleElement<F> {
    let l = li.mono.lcm(&lj.mono);
    let ti = l.checked_div(&li.mono).unwrap();
    let tj = l.checked_div(&lj.mono).unwrap();
    ModuleElement::zero(gi.ring(), gi.rank()).add_scaled(&li.inv, &ti, gi).add_scaled(&-lj.inv.clone(), &tj, gj)
}

fn combine<F: Field>(acc: &mut [Polynomial<F>], c: &F, t: &Monomial, row: &[Polynomial<F>]) {
    for (a, r) in acc.iter_mut().zip(row) {
        if !r.is_zero() {
            *a = a.add_scaled(c, t, r);
        }
    }
}

fn subtract_products<F: Field>(acc: &mut [Polynomial<F>], q: &[Polynomial<F>], rows: &[Vec<Polynomial<F>>]) {
    for (qj, row) in q.iter().zip(rows) {
        if qj.is_zero() {
            continue;
        }
        for (a, r) in acc.iter_mut().zip(row) {
            if !r.is_zero() {
                *a = &*a - &(qj * r);
            }
        }
    }
}

struct State<'a, F: Field> {
    ring: Arc<Ring>,
    twists: Option<&'a [i64]>,
    track: bool,
    elems: Vec<ModuleElement<F>>,
    leads: Vec<Lead<F>>,
    cofs: Vec<Vec<Polynomial<F>>>,
    queue: BTreeSet<(i64, usize, usize)>,
    pending: HashSet<(usize, usize)>,
}

impl<'a, F: Field> State<'a, F> {
    fn pair_degree(&self, i: usize, j: usize) -> i64 {
        let pos = self.leads[i].pos;
        let d = self.leads[i].mono.lcm(&self.leads[j].mono).degree() as i64;
        d + self.twists.map_or(0, |t| t[pos])
    }

    fn push(&mut self, e: ModuleElement<F>, mut cof: Vec<Polynomial<F>>) {
        let inv = e.leading().unwrap().2.inv().unwrap();
        let e = e.scale(&inv);
        if self.track {
            for c in cof.iter_mut() {
                *c = c.scale(&inv);
            }
        }
        let n = self.elems.len();
        let (pos, mono, _) = e.leading().unwrap();
        self.leads.push(Lead { pos, mono: mono.clone(), inv: F::one() });
        self.elems.push(e);
        self.cofs.push(cof);
        for i in 0..n {
            if self.leads[i].pos == pos {
                let key = (self.pair_degree(i, n), i, n);
                self.queue.insert(key);
                self.pending.insert((i, n));
            }
        }
    }

    fn reduce_in(&self, v: &ModuleElement<F>, cof: &mut [Polynomial<F>]) -> ModuleElement<F> {
        let (q, r) = reduce(v, &self.elems, &self.leads, self.track);
        if let Some(q) = q {
            subtract_products(cof, &q, &self.cofs);
        }
        r
    }

    fn chain_skip(&self, i: usize, j: usize) -> bool {
        let pos = self.leads[i].pos;
        let l = self.leads[i].mono.lcm(&self.leads[j].mono);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..self.elems.len()).any(|k| {
            k != i
                && k != j
                && self.leads[k].pos == pos
                && self.leads[k].mono.divides(&l)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }
}

/// Reduced Gröbner basis of the module generated by `gens`, optionally with
/// the matrix expressing each basis element in `gens`.
/// Row `i` expresses basis element `i` in the input generators.
type Cofactors<F> = Vec<Vec<Polynomial<F>>>;

pub(crate) fn compute<F: Field>(
    ring: &Arc<Ring>,
    rank: usize,
    gens: &[ModuleElement<F>],
    twists: Option<&[i64]>,
    track: bool,
) -> (Vec<ModuleElement<F>>, Option<Cofactors<F>>) {
    let s = gens.len();
    let mut st = State {
        ring: ring.clone(),
        twists,
        track,
        elems: Vec::new(),
        leads: Vec::new(),
        cofs: Vec::new(),
        queue: BTreeSet::new(),
        pending: HashSet::new(),
    };
    let unit_row = |k: usize| -> Vec<Polynomial<F>> {
        if !track {
            return Vec::new();
        }
        let mut row = vec![Polynomial::zero(ring); s];
        row[k] = Polynomial::one(ring);
        row
    };

    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut cof = unit_row(k);
        let r = st.reduce_in(g, &mut cof);
        if !r.is_zero() {
            st.push(r, cof);
        }
    }

    while let Some((_, i, j)) = st.queue.pop_first() {
        st.pending.remove(&(i, j));
        // coprime leading monomials: only sound for ideals
        if rank == 1 && st.leads[i].mono.is_coprime(&st.leads[j].mono) {
            continue;
        }
        if st.chain_skip(i, j) {
            continue;
        }
        let sv = s_vector(&st.elems[i], &st.leads[i], &st.elems[j], &st.leads[j]);
        let mut cof = Vec::new();
        if track {
            let l = st.leads[i].mono.lcm(&st.leads[j].mono);
            cof = vec![Polynomial::zero(&st.ring); s];
            combine(&mut cof, &st.leads[i].inv, &l.checked_div(&st.leads[i].mono).unwrap(), &st.cofs[i]);
            combine(&mut cof, &-st.leads[j].inv.clone(), &l.checked_div(&st.leads[j].mono).unwrap(), &st.cofs[j]);
        }
        let r = st.reduce_in(&sv, &mut cof);
        if !r.is_zero() {
            st.push(r, cof);
        }
    }

    // minimalize: drop elements whose leading term is a multiple of another's
    let n = st.elems.len();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| {
                j != i
                    && st.leads[j].pos == st.leads[i].pos
                    && st.leads[j].mono.divides(&st.leads[i].mono)
                    && (st.leads[j].mono != st.leads[i].mono || j < i)
            })
        })
        .collect();
    let mut elems: Vec<ModuleElement<F>> = keep.iter().map(|&i| st.elems[i].clone()).collect();
    let mut cofs: Vec<Vec<Polynomial<F>>> = keep.iter().map(|&i| st.cofs[i].clone()).collect();

    // interreduce tails
    for i in 0..elems.len() {
        let others: Vec<ModuleElement<F>> =
            elems.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, e)| e.clone()).collect();
        let other_leads = leads(&others);
        let (q, r) = reduce(&elems[i], &others, &other_leads, track);
        if let Some(q) = q {
            let other_cofs: Vec<Vec<Polynomial<F>>> =
                cofs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, c)| c.clone()).collect();
            subtract_products(&mut cofs[i], &q, &other_cofs);
        }
        elems[i] = r;
    }

    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, ma, _) = elems[a].leading().unwrap();
        let (pb, mb, _) = elems[b].leading().unwrap();
        pa.cmp(&pb).then_with(|| ring.cmp_monomials(mb, ma))
    });
    let elems_sorted = order.iter().map(|&i| elems[i].clone()).collect();
    let transform = track.then(|| order.iter().map(|&i| cofs[i].clone()).collect());
    (elems_sorted, transform)
}
