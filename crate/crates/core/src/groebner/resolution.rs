use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{buchberger, hilbert::RationalSeries, normal_form, syzygies, ModuleElement, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::linalg::EchelonBasis;
use crate::poly::{Monomial, Ring};

/// What [`free_resolution`] resolves: the submodule itself or `R^m / M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionTarget {
    Submodule,
    Quotient,
}

/// One free module `F_i = sum_j R(-twists[j])` of a resolution together with
/// the images of its basis vectors under `F_i -> F_{i-1}` (for `i = 0`: the
/// generators of the resolved submodule, or nothing for a quotient).
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionStep<F: Field> {
    pub rank: usize,
    pub twists: Vec<i64>,
    pub map: Vec<ModuleElement<F>>,
}

#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    ring: Arc<Ring>,
    target: ResolutionTarget,
    steps: Vec<ResolutionStep<F>>,
}

impl<F: Field> FreeResolution<F> {
    pub fn steps(&self) -> &[ResolutionStep<F>] {
        &self.steps
    }

    pub fn target(&self) -> ResolutionTarget {
        self.target
    }

    /// Index of the last nonzero free module; the projective dimension.
    pub fn length(&self) -> usize {
        self.steps.iter().rposition(|s| s.rank > 0).unwrap_or(0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank).collect()
    }

    /// Graded Betti numbers: for each step, twist -> multiplicity.
    pub fn betti_numbers(&self) -> Vec<BTreeMap<i64, usize>> {
        self.steps
            .iter()
            .map(|s| {
                let mut m = BTreeMap::new();
                for &t in &s.twists {
                    *m.entry(t).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    /// Consecutive maps compose to zero.
    pub fn verify_complex(&self) -> bool {
        for i in 1..self.steps.len() {
            let prev = &self.steps[i - 1].map;
            if prev.is_empty() {
                continue;
            }
            for v in &self.steps[i].map {
                let image = ModuleElement::linear_combination(v.coords(), prev).unwrap();
                if !image.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exactness at every `F_i`, `i >= 1`: the kernel of `F_i -> F_{i-1}`
    /// lies in the image of `F_{i+1}`, tested by normal forms.
    pub fn verify_exact(&self) -> Result<bool> {
        for i in 0..self.steps.len() {
            let step = &self.steps[i];
            if step.rank == 0 || step.map.is_empty() {
                continue;
            }
            let kernel = syzygies(&Submodule::new(&self.ring, step.map[0].rank(), step.map.clone())?)?;
            let image = match self.steps.get(i + 1) {
                Some(next) => next.map.clone(),
                None => Vec::new(),
            };
            let gb = buchberger(&Submodule::new(&self.ring, step.rank, image)?);
            for k in kernel.generators() {
                if !normal_form(k, &gb)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No map between free modules has an entry with a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.steps
            .iter()
            .skip(1)
            .flat_map(|s| s.map.iter())
            .flat_map(|v| v.coords().iter())
            .all(|p| p.coeff(&Monomial::one(self.ring.nvars())).is_zero())
    }

    /// `sum_i (-1)^i sum_j t^twist_ij / (1-t)^d`
    pub fn euler_series(&self) -> RationalSeries {
        let d = self.ring.nvars() as u32;
        let mut acc = RationalSeries::zero(d);
        for (i, s) in self.steps.iter().enumerate() {
            for &t in &s.twists {
                let term = RationalSeries::monomial(t, d);
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        acc
    }
}

fn degree_of<F: Field>(v: &ModuleElement<F>, twists: &[i64]) -> Result<i64> {
    Ok(v.degree(twists)?.expect("nonzero generator"))
}

/// A minimal homogeneous generating set (graded Nakayama): generators are
/// taken by increasing degree and kept when their normal form modulo the
/// lower-degree ones is linearly independent of the others kept in that
/// degree.
pub fn minimal_generators<F: Field>(m: &Submodule<F>) -> Result<Submodule<F>> {
    let degrees = m.generator_degrees()?;
    let mut cands: Vec<(i64, &ModuleElement<F>)> =
        m.generators().iter().zip(&degrees).filter_map(|(g, d)| d.map(|d| (d, g))).collect();
    cands.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<ModuleElement<F>> = Vec::new();
    let mut start = 0;
    while start < cands.len() {
        let deg = cands[start].0;
        let end = start + cands[start..].iter().take_while(|(d, _)| *d == deg).count();
        let gb = buchberger(&Submodule::new(m.ring(), m.rank(), kept.clone())?);
        let nfs: Vec<ModuleElement<F>> =
            cands[start..end].iter().map(|(_, g)| normal_form(g, &gb)).collect::<Result<_>>()?;
        let mut index: BTreeMap<(usize, &Monomial), usize> = BTreeMap::new();
        for nf in &nfs {
            for (p, c) in nf.coords().iter().enumerate() {
                for (mono, _) in c.terms() {
                    let n = index.len();
                    index.entry((p, mono)).or_insert(n);
                }
            }
        }
        let mut ech = EchelonBasis::new();
        let mut fresh = Vec::new();
        for ((_, g), nf) in cands[start..end].iter().zip(&nfs) {
            let mut row = vec![F::zero(); index.len()];
            for (p, c) in nf.coords().iter().enumerate() {
                for (mono, a) in c.terms() {
                    row[index[&(p, mono)]] = a.clone();
                }
            }
            if ech.insert(row) {
                fresh.push((*g).clone());
            }
        }
        kept.extend(fresh);
        start = end;
    }
    Submodule::new(m.ring(), m.rank(), kept)?.with_twists(m.twists().to_vec())
}

/// Removes coordinates killed by a generator with a unit entry, giving an
/// isomorphic quotient presentation without constant entries. `None` when
/// the quotient is zero.
fn prune_units<F: Field>(m: Submodule<F>) -> Result<Option<Submodule<F>>> {
    let mut cur = minimal_generators(&m)?;
    loop {
        let hit = cur
            .generators()
            .iter()
            .enumerate()
            .find_map(|(i, g)| g.coords().iter().position(|c| !c.is_zero() && c.is_constant()).map(|p| (i, p)));
        let Some((i, p)) = hit else { return Ok(Some(cur)) };
        let ring = cur.ring().clone();
        if cur.rank() == 1 {
            return Ok(None);
        }
        let g = cur.generators()[i].clone();
        let inv = g.coord(p).leading_coeff().unwrap().inv().unwrap();
        let mut gens = Vec::new();
        for (k, h) in cur.generators().iter().enumerate() {
            if k == i {
                continue;
            }
            let factor = h.coord(p).scale(&inv);
            let reduced = h.sub(&g.mul_poly(&factor));
            let mut coords = reduced.into_coords();
            coords.remove(p);
            gens.push(ModuleElement::new(coords)?);
        }
        let mut twists = cur.twists().to_vec();
        twists.remove(p);
        let next = Submodule::new(&ring, twists.len(), gens)?.with_twists(twists)?;
        cur = minimal_generators(&next)?;
    }
}

/// Minimal graded free resolution by iterated syzygies and minimalization.
pub fn free_resolution<F: Field>(m: &Submodule<F>, target: ResolutionTarget) -> Result<FreeResolution<F>> {
    m.generator_degrees()?;
    let ring = m.ring().clone();
    let d = ring.nvars();
    let mut steps: Vec<ResolutionStep<F>> = Vec::new();

    let mut current = match target {
        ResolutionTarget::Submodule => {
            let mins = minimal_generators(m)?;
            let twists = mins.generators().iter().map(|g| degree_of(g, mins.twists())).collect::<Result<Vec<_>>>()?;
            steps.push(ResolutionStep { rank: mins.generators().len(), twists, map: mins.generators().to_vec() });
            if mins.generators().is_empty() {
                None
            } else {
                Some(syzygies(&mins)?)
            }
        }
        ResolutionTarget::Quotient => match prune_units(m.clone())? {
            Some(pruned) => {
                steps.push(ResolutionStep { rank: pruned.rank(), twists: pruned.twists().to_vec(), map: Vec::new() });
                Some(pruned)
            }
            None => {
                steps.push(ResolutionStep { rank: 0, twists: Vec::new(), map: Vec::new() });
                None
            }
        },
    };

    while let Some(module) = current.take() {
        let mins = minimal_generators(&module)?;
        if mins.generators().is_empty() {
            break;
        }
        if steps.len() > d + 1 {
            return Err(Error::Hypothesis("resolution exceeded the syzygy bound".into()));
        }
        let twists = mins.generators().iter().map(|g| degree_of(g, mins.twists())).collect::<Result<Vec<_>>>()?;
        steps.push(ResolutionStep { rank: mins.generators().len(), twists, map: mins.generators().to_vec() });
        current = Some(syzygies(&mins)?);
    }
    Ok(FreeResolution { ring, target, steps })
}

/// Length of the minimal graded free resolution of `m` (or of `R^m / m`).
pub fn projective_dimension<F: Field>(m: &Submodule<F>, as_quotient: bool) -> Result<usize> {
    let target = if as_quotient { ResolutionTarget::Quotient } else { ResolutionTarget::Submodule };
    Ok(free_resolution(m, target)?.length())
}
