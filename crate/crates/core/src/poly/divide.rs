use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division<F: Field> {
    pub quotients: Vec<Polynomial<F>>,
    pub remainder: Polynomial<F>,
}

/// Multivariate division of `f` by `divisors` in the ring's term order.
///
/// At each step the leading term of the running dividend is cancelled by the
/// first divisor whose leading monomial divides it; otherwise it moves to the
/// remainder. Zero divisors are rejected.
pub fn multivariate_divide<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Result<Division<F>> {
    let ring = f.ring();
    for g in divisors {
        if !super::same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::Hypothesis("division by the zero polynomial".into()));
        }
    }
    let leads: Vec<_> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().unwrap();
            (m.clone(), c.inv().unwrap())
        })
        .collect();
    let mut quotients = vec![Polynomial::zero(ring); divisors.len()];
    let mut remainder = Polynomial::zero(ring);
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, linv))| m.checked_div(lm).map(|q| (i, q, c.clone() * linv.clone())));
        match hit {
            Some((i, q, coeff)) => {
                p = p.add_scaled(&-coeff.clone(), &q, &divisors[i]);
                quotients[i] = quotients[i].add_scaled(&coeff, &q, &Polynomial::one(ring));
            }
            None => {
                p.pop_leading();
                remainder.push_trailing(m, c);
            }
        }
    }
    Ok(Division { quotients, remainder })
}
