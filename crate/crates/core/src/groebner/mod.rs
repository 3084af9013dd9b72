//! Gröbner bases of submodules of `R^m` and everything built on them:
//! normal forms, membership with witnesses, syzygies, graded minimal free
//! resolutions, Hilbert series and regular sequences.
//!
//! Module elements are ordered position-over-term: the leading term of a
//! vector is the leading term of its first nonzero coordinate, and terms
//! in different coordinates compare by coordinate index (lower index
//! wins). Ideals are the case `m = 1`.

mod buchberger;
mod hilbert;
mod regular;
mod resolution;
mod syzygy;

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{same_ring, Homogeneity, Monomial, Polynomial, Ring};

pub use hilbert::{hilbert_series, hilbert_series_of_quotient, RationalSeries};
pub use regular::{colon_ideal, is_regular_sequence};
pub use resolution::{
    free_resolution, minimal_generators, projective_dimension, FreeResolution, ResolutionStep, ResolutionTarget,
};
pub use syzygy::{kernel_of_matrix, syzygies};

/// A vector in `R^m`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement<F: Field> {
    coords: Vec<Polynomial<F>>,
}

impl<F: Field> ModuleElement<F> {
    pub fn new(coords: Vec<Polynomial<F>>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::Hypothesis("module elements need at least one coordinate".into()));
        };
        if coords.iter().any(|c| !same_ring(c.ring(), first.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(ModuleElement { coords })
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> Self {
        assert!(rank > 0);
        ModuleElement { coords: vec![Polynomial::zero(ring); rank] }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(ring: &Arc<Ring>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.coords[i] = Polynomial::one(ring);
        v
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        ModuleElement { coords: vec![p] }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.coords[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial<F>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Polynomial<F>> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &Polynomial<F> {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Leading term under position-over-term: `(position, monomial, coefficient)`.
    pub fn leading(&self) -> Option<(usize, &Monomial, &F)> {
        self.coords.iter().enumerate().find_map(|(i, c)| c.leading_term().map(|(m, a)| (i, m, a)))
    }

    /// `self + c * m * other`
    pub fn add_scaled(&self, c: &F, m: &Monomial, other: &Self) -> Self {
        ModuleElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add_scaled(c, m, b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        ModuleElement { coords: self.coords.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial<F>) -> Self {
        ModuleElement { coords: self.coords.iter().map(|a| a * p).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        ModuleElement { coords: self.coords.iter().map(|a| -a).collect() }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, _, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Degree of a homogeneous element of the graded free module with the
    /// given twists (coordinate `i` has degree `deg(coord_i) + twists[i]`).
    /// `Ok(None)` for the zero vector.
    pub fn degree(&self, twists: &[i64]) -> Result<Option<i64>> {
        let mut deg = None;
        for (i, c) in self.coords.iter().enumerate() {
            let d = match c.homogeneity() {
                Homogeneity::Zero => continue,
                Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(format!("coordinate `{c}`"))),
                Homogeneity::Homogeneous(d) => d as i64 + twists[i],
            };
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Inhomogeneous(format!("vector {self} mixes degrees {e} and {d}")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// `sum_i coeffs[i] * vectors[i]`
    pub fn linear_combination(coeffs: &[Polynomial<F>], vectors: &[ModuleElement<F>]) -> Option<Self> {
        let first = vectors.first()?;
        let mut acc = ModuleElement::zero(first.ring(), first.rank());
        for (c, v) in coeffs.iter().zip(vectors) {
            for (m, a) in c.terms() {
                acc = acc.add_scaled(a, m, v);
            }
        }
        Some(acc)
    }
}

impl<F: Field> fmt::Display for ModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Debug for ModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Serialize for ModuleElement<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// A finitely generated submodule of the graded free module `R^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule<F: Field> {
    ring: Arc<Ring>,
    rank: usize,
    twists: Vec<i64>,
    generators: Vec<ModuleElement<F>>,
}

impl<F: Field> Submodule<F> {
    pub fn new(ring: &Arc<Ring>, rank: usize, generators: Vec<ModuleElement<F>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Hypothesis("ambient rank must be positive".into()));
        }
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Submodule { ring: ring.clone(), rank, twists: vec![0; rank], generators })
    }

    /// The ideal generated by `gens`, as a submodule of `R^1`.
    pub fn ideal(ring: &Arc<Ring>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        Self::new(ring, 1, gens.into_iter().map(ModuleElement::from_poly).collect())
    }

    /// Sets the degrees of the standard basis vectors of the ambient module.
    pub fn with_twists(mut self, twists: Vec<i64>) -> Result<Self> {
        if twists.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: twists.len() });
        }
        self.twists = twists;
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn generators(&self) -> &[ModuleElement<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(ModuleElement::is_zero)
    }

    /// Degrees of the nonzero generators; errors if any is inhomogeneous.
    pub fn generator_degrees(&self) -> Result<Vec<Option<i64>>> {
        self.generators.iter().map(|g| g.degree(&self.twists)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generator_degrees().is_ok()
    }

    fn check(&self, v: &ModuleElement<F>) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.rank() });
        }
        if !same_ring(v.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

/// A Gröbner basis under position-over-term with the ring's term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring>,
    rank: usize,
    elements: Vec<ModuleElement<F>>,
    reduced: bool,
    /// Row `j` expresses `elements[j]` in the original generators.
    transform: Option<Vec<Vec<Polynomial<F>>>>,
    num_generators: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn elements(&self) -> &[ModuleElement<F>] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Cofactors of each basis element in terms of the original generators,
    /// present when built by [`buchberger_with_cofactors`].
    pub fn transform(&self) -> Option<&[Vec<Polynomial<F>>]> {
        self.transform.as_deref()
    }

    /// Contains a unit of `R^m` in position 0 (for ideals: the ideal is `R`).
    pub fn is_whole_ring(&self) -> bool {
        self.rank == 1 && self.elements.iter().any(|e| e.coords[0].is_unit())
    }

    /// Leading monomials grouped by position.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank];
        for e in &self.elements {
            let (p, m, _) = e.leading().expect("basis elements are nonzero");
            out[p].push(m.clone());
        }
        out
    }

    /// Buchberger's criterion, checked exhaustively: every S-vector reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let leads = buchberger::leads(&self.elements);
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                if leads[i].pos != leads[j].pos {
                    continue;
                }
                let s = buchberger::s_vector(&self.elements[i], &leads[i], &self.elements[j], &leads[j]);
                if !buchberger::reduce(&s, &self.elements, &leads, false).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of `m`. An empty generator list gives an empty basis.
pub fn buchberger<F: Field>(m: &Submodule<F>) -> GroebnerBasis<F> {
    let (elements, _) = buchberger::compute(&m.ring, m.rank, &m.generators, Some(&m.twists), false);
    GroebnerBasis {
        ring: m.ring.clone(),
        rank: m.rank,
        elements,
        reduced: true,
        transform: None,
        num_generators: m.generators.len(),
    }
}

/// Like [`buchberger`], additionally recording how every basis element is
/// built from the original generators.
pub fn buchberger_with_cofactors<F: Field>(m: &Submodule<F>) -> GroebnerBasis<F> {
    let (elements, transform) = buchberger::compute(&m.ring, m.rank, &m.generators, Some(&m.twists), true);
    GroebnerBasis {
        ring: m.ring.clone(),
        rank: m.rank,
        elements,
        reduced: true,
        transform,
        num_generators: m.generators.len(),
    }
}

fn check_against_basis<F: Field>(v: &ModuleElement<F>, gb: &GroebnerBasis<F>) -> Result<()> {
    if v.rank() != gb.rank {
        return Err(Error::RankMismatch { expected: gb.rank, found: v.rank() });
    }
    if !same_ring(v.ring(), &gb.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Remainder of `v` on division by the basis; zero iff `v` lies in the module.
pub fn normal_form<F: Field>(v: &ModuleElement<F>, gb: &GroebnerBasis<F>) -> Result<ModuleElement<F>> {
    check_against_basis(v, gb)?;
    let leads = buchberger::leads(&gb.elements);
    Ok(buchberger::reduce(v, &gb.elements, &leads, false).1)
}

/// Division by the basis, returning quotients indexed by basis element.
pub fn reduce_with_quotients<F: Field>(
    v: &ModuleElement<F>,
    gb: &GroebnerBasis<F>,
) -> Result<(Vec<Polynomial<F>>, ModuleElement<F>)> {
    check_against_basis(v, gb)?;
    let leads = buchberger::leads(&gb.elements);
    let (q, r) = buchberger::reduce(v, &gb.elements, &leads, true);
    Ok((q.unwrap(), r))
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership<F: Field> {
    pub member: bool,
    /// Coefficients `c_k` with `v = sum_k c_k * generator_k`, present iff `member`.
    pub witness: Option<Vec<Polynomial<F>>>,
}

/// Decides `v ∈ M` and, when it is, expresses `v` in the original generators.
pub fn module_membership<F: Field>(v: &ModuleElement<F>, m: &Submodule<F>) -> Result<Membership<F>> {
    m.check(v)?;
    let gb = buchberger_with_cofactors(m);
    let (q, r) = reduce_with_quotients(v, &gb)?;
    if !r.is_zero() {
        return Ok(Membership { member: false, witness: None });
    }
    let transform = gb.transform.as_ref().expect("cofactors tracked");
    let ring = &m.ring;
    let mut witness = vec![Polynomial::zero(ring); gb.num_generators];
    for (qj, row) in q.iter().zip(transform) {
        if qj.is_zero() {
            continue;
        }
        for (w, t) in witness.iter_mut().zip(row) {
            *w = &*w + &(qj * t);
        }
    }
    Ok(Membership { member: true, witness: Some(witness) })
}

/// `f ∈ I`, with a witness against the original generators of `I`.
pub fn ideal_membership<F: Field>(f: &Polynomial<F>, ideal: &Submodule<F>) -> Result<Membership<F>> {
    if ideal.rank != 1 {
        return Err(Error::RankMismatch { expected: 1, found: ideal.rank });
    }
    module_membership(&ModuleElement::from_poly(f.clone()), ideal)
}
