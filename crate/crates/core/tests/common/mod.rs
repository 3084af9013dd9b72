#![allow(dead_code)]

//! Test-side helpers: a brute-force linear-algebra oracle that never calls
//! into the Gröbner engine, and seeded random instance generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use gspline::graph::{parse_graph, EdgeLabeledGraph};
use gspline::poly::{Monomial, Polynomial, Ring};
use gspline::Field;
use gspline::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;
pub type Poly = Polynomial<Q>;
pub type Graph = EdgeLabeledGraph<Q>;

/// Sparse vector over ℚ keyed by (position, exponents).
pub type Key = (usize, Vec<u32>);
pub type SparseVec = BTreeMap<Key, BigRational>;

/// Row-echelon span with pivots on the largest key.
#[derive(Default)]
pub struct Span {
    rows: BTreeMap<Key, SparseVec>,
}

impl Span {
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        while let Some((k, c)) = v.pop_last() {
            match self.rows.get(&k) {
                None => {
                    out.insert(k, c);
                }
                Some(row) => {
                    for (rk, rc) in row.iter().filter(|(rk, _)| **rk != k) {
                        let e = v.entry(rk.clone()).or_insert_with(BigRational::zero);
                        *e -= &c * rc;
                        if e.is_zero() {
                            v.remove(rk);
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `v`; false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            None => false,
            Some((k, c)) => {
                let inv = BigRational::one() / c;
                let r: SparseVec = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                self.rows.insert(k, r);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

pub fn exponents_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in exponents_of_degree(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficients of `m * p` placed at position `pos`.
pub fn shifted(pos: usize, m: &[u32], p: &Poly, into: &mut SparseVec) {
    for (mono, c) in p.terms() {
        let key = (pos, mono.exponents().iter().zip(m).map(|(a, b)| a + b).collect());
        let slot = into.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            into.remove(&key);
        }
    }
}

pub fn vector(coords: &[Poly]) -> SparseVec {
    let mut v = SparseVec::new();
    let one = vec![0; coords.first().map_or(0, |p| p.ring().nvars())];
    for (i, p) in coords.iter().enumerate() {
        shifted(i, &one, p, &mut v);
    }
    v
}

fn degree(p: &Poly) -> Option<u32> {
    p.terms().first().map(|(m, _)| m.degree())
}

/// Degree of a homogeneous vector under `twists`.
pub fn vector_degree(coords: &[Poly], twists: &[i64]) -> Option<i64> {
    coords.iter().zip(twists).find_map(|(p, w)| degree(p).map(|d| d as i64 + w))
}

/// `f` lies in the homogeneous submodule generated by `gens` iff it lies in
/// the span of all `m * g` of the same degree.
pub fn graded_member(v: &[Poly], gens: &[Vec<Poly>], twists: &[i64]) -> bool {
    let Some(d) = vector_degree(v, twists) else { return true };
    let nvars = v[0].ring().nvars();
    let mut span = Span::default();
    for g in gens {
        let Some(dg) = vector_degree(g, twists) else { continue };
        if dg > d {
            continue;
        }
        for m in exponents_of_degree(nvars, (d - dg) as u32) {
            let mut row = SparseVec::new();
            for (i, p) in g.iter().enumerate() {
                shifted(i, &m, p, &mut row);
            }
            span.insert(row);
        }
    }
    span.contains(vector(v))
}

/// Dimension of the degree-`d` part of `{v : A v = 0}` where column `j`
/// carries twist `twists[j]`.
pub fn kernel_dim(rows: &[Vec<Poly>], twists: &[i64], d: i64) -> usize {
    let nvars = rows[0][0].ring().nvars();
    let mut unknowns = 0;
    let mut span = Span::default();
    for (j, &w) in twists.iter().enumerate() {
        if d < w {
            continue;
        }
        for m in exponents_of_degree(nvars, (d - w) as u32) {
            unknowns += 1;
            let mut image = SparseVec::new();
            for (i, row) in rows.iter().enumerate() {
                shifted(i, &m, &row[j], &mut image);
            }
            span.insert(image);
        }
    }
    unknowns - span.dim()
}

/// `dim_k (R/I)_d` for homogeneous generators.
pub fn quotient_dim(gens: &[Poly], d: u32) -> usize {
    let nvars = gens[0].ring().nvars();
    let mut span = Span::default();
    for g in gens {
        let Some(dg) = degree(g) else { continue };
        if dg > d {
            continue;
        }
        for m in exponents_of_degree(nvars, d - dg) {
            let mut row = SparseVec::new();
            shifted(0, &m, g, &mut row);
            span.insert(row);
        }
    }
    exponents_of_degree(nvars, d).len() - span.dim()
}

pub fn ring(names: &[&str]) -> Arc<Ring> {
    Ring::new(names.iter().copied()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_coeff(rng: &mut ChaCha8Rng) -> Q {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3i64..=3);
    }
    Q::from_bigint(&BigInt::from(c))
}

/// A nonzero homogeneous polynomial of degree `d` with at most `terms` terms.
pub fn random_homogeneous(r: &Arc<Ring>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly {
    let monos = exponents_of_degree(r.nvars(), d);
    let k = rng.gen_range(1..=terms.min(monos.len()));
    let chosen: Vec<&Vec<u32>> = monos.choose_multiple(rng, k).collect();
    Polynomial::from_terms(r, chosen.into_iter().map(|e| (Monomial::from_exponents(e.clone()), small_coeff(rng))))
}

/// Any polynomial of degree at most `d`.
pub fn random_poly(r: &Arc<Ring>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Polynomial::zero(r);
    while p.is_zero() {
        let mut acc = Polynomial::zero(r);
        for _ in 0..rng.gen_range(1..=terms) {
            let deg = rng.gen_range(0..=d);
            acc = &acc + &random_homogeneous(r, deg, 1, rng);
        }
        p = acc;
    }
    p
}

/// A cycle `v0 - v1 - ... - v{n-1} - v0` with the given labels.
pub fn cycle_graph(r: &Arc<Ring>, labels: &[Poly]) -> Graph {
    let n = labels.len();
    let edges = labels.iter().enumerate().map(|(i, l)| (i, (i + 1) % n, l.clone())).collect();
    let names = (0..n).map(|i| format!("v{i}")).collect();
    EdgeLabeledGraph::new(r, names, edges).unwrap()
}

/// Grows a graph from a cycle by adding ears whose labels contain the
/// label of the edge they attach to, pendant edges and disjoint cycles.
/// Most results decompose; callers filter.
pub fn random_ear_graph(r: &Arc<Ring>, max_vertices: usize, rng: &mut ChaCha8Rng) -> Graph {
    let deg = |rng: &mut ChaCha8Rng| rng.gen_range(1..=2);
    let mut nv = rng.gen_range(2..=4);
    let mut edges: Vec<(usize, usize, Poly)> = Vec::new();
    for i in 0..nv {
        let j = (i + 1) % nv;
        let d = deg(rng);
        edges.push((i, j, random_homogeneous(r, d, 2, rng)));
    }
    while nv < max_vertices {
        match rng.gen_range(0..4) {
            0 | 1 => {
                // ear over an existing edge
                let (u, v, l) = edges.choose(rng).unwrap().clone();
                let len = rng.gen_range(1..=2).min(max_vertices - nv);
                let mut path = vec![u];
                for _ in 0..len {
                    path.push(nv);
                    nv += 1;
                }
                path.push(v);
                let carrier = rng.gen_range(0..path.len() - 1);
                for k in 0..path.len() - 1 {
                    let label = if k == carrier {
                        l.clone()
                    } else {
                        let d = deg(rng);
                        random_homogeneous(r, d, 2, rng)
                    };
                    edges.push((path[k], path[k + 1], label));
                }
            }
            2 => {
                let u = rng.gen_range(0..nv);
                let d = deg(rng);
                edges.push((u, nv, random_homogeneous(r, d, 2, rng)));
                nv += 1;
            }
            _ => {
                if max_vertices - nv < 2 {
                    break;
                }
                let (a, b) = (nv, nv + 1);
                nv += 2;
                for (u, v) in [(a, b), (a, b)] {
                    let d = deg(rng);
                    edges.push((u, v, random_homogeneous(r, d, 2, rng)));
                }
            }
        }
    }
    let names = (0..nv).map(|i| format!("v{i}")).collect();
    EdgeLabeledGraph::new(r, names, edges).unwrap()
}

pub fn graph(text: &str) -> Graph {
    parse_graph(text).unwrap()
}

pub fn poly(r: &Arc<Ring>, s: &str) -> Poly {
    gspline::poly::parse_poly(s, r).unwrap()
}
