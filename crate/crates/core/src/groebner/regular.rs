use super::{buchberger, normal_form, syzygies, ModuleElement, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{same_ring, Polynomial};

/// `(I : f) = { g : g*f in I }`, read off as the last coordinate of the
/// syzygies of `(generators of I, f)`.
pub fn colon_ideal<F: Field>(ideal: &Submodule<F>, f: &Polynomial<F>) -> Result<Submodule<F>> {
    if ideal.rank() != 1 {
        return Err(Error::RankMismatch { expected: 1, found: ideal.rank() });
    }
    if !same_ring(ideal.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut gens = ideal.generators().to_vec();
    gens.push(ModuleElement::from_poly(f.clone()));
    let syz = syzygies(&Submodule::new(ideal.ring(), 1, gens)?)?;
    let last = syz.rank() - 1;
    let colon: Vec<Polynomial<F>> =
        syz.generators().iter().map(|v| v.coord(last).clone()).filter(|p| !p.is_zero()).collect();
    Submodule::ideal(ideal.ring(), colon)
}

/// Whether `fs` is a regular sequence: no `f_i` is a zero divisor modulo
/// the earlier ones, and the whole sequence generates a proper ideal.
pub fn is_regular_sequence<F: Field>(fs: &[Polynomial<F>]) -> Result<bool> {
    let Some(first) = fs.first() else {
        return Err(Error::Hypothesis("regular sequence test needs at least one element".into()));
    };
    let ring = first.ring();
    let full = Submodule::ideal(ring, fs.to_vec())?;
    if buchberger(&full).is_whole_ring() {
        return Ok(false);
    }
    for i in 0..fs.len() {
        let prefix = Submodule::ideal(ring, fs[..i].to_vec())?;
        let gb = buchberger(&prefix);
        let colon = colon_ideal(&prefix, &fs[i])?;
        for g in colon.generators() {
            if !normal_form(g, &gb)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
