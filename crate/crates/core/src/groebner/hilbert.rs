use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{buchberger, Submodule};
use crate::error::Result;
use crate::field::Field;
use crate::poly::Monomial;

/// `numerator(t) / (1-t)^d` where the numerator is a Laurent polynomial
/// with integer coefficients (`coeffs[i]` multiplies `t^(shift + i)`).
#[derive(Clone, Debug)]
pub struct RationalSeries {
    coeffs: Vec<BigInt>,
    shift: i64,
    denominator_exponent: u32,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<BigInt>, shift: i64, denominator_exponent: u32) -> Self {
        let mut s = RationalSeries { coeffs, shift, denominator_exponent };
        s.trim();
        s
    }

    /// From integer coefficients of `t^0, t^1, ...`.
    pub fn from_i64s(coeffs: &[i64], denominator_exponent: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), 0, denominator_exponent)
    }

    pub fn zero(denominator_exponent: u32) -> Self {
        Self::new(Vec::new(), 0, denominator_exponent)
    }

    /// `t^k / (1-t)^d`
    pub fn monomial(k: i64, denominator_exponent: u32) -> Self {
        Self::new(vec![BigInt::one()], k, denominator_exponent)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.shift = if self.coeffs.is_empty() { 0 } else { self.shift + lead as i64 };
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn denominator_exponent(&self) -> u32 {
        self.denominator_exponent
    }

    /// Numerator as `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn numerator(&self) -> Vec<(i64, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    fn add_laurent(a: &[BigInt], sa: i64, b: &[BigInt], sb: i64, sign: i32) -> (Vec<BigInt>, i64) {
        if a.is_empty() {
            let b: Vec<BigInt> = b.iter().map(|c| if sign < 0 { -c } else { c.clone() }).collect();
            return (b, sb);
        }
        if b.is_empty() {
            return (a.to_vec(), sa);
        }
        let lo = sa.min(sb);
        let hi = (sa + a.len() as i64).max(sb + b.len() as i64);
        let mut out = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in a.iter().enumerate() {
            out[(sa - lo) as usize + i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            if sign < 0 {
                out[(sb - lo) as usize + i] -= c;
            } else {
                out[(sb - lo) as usize + i] += c;
            }
        }
        (out, lo)
    }

    fn mul_one_minus_t_pow(coeffs: &[BigInt], e: u32) -> Vec<BigInt> {
        let mut out = coeffs.to_vec();
        for _ in 0..e {
            let mut next = vec![BigInt::zero(); out.len() + 1];
            for (i, c) in out.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            out = next;
        }
        out
    }

    /// Same series written over `(1-t)^e`, `e >= d`.
    pub fn with_denominator(&self, e: u32) -> Self {
        assert!(e >= self.denominator_exponent);
        Self::new(Self::mul_one_minus_t_pow(&self.coeffs, e - self.denominator_exponent), self.shift, e)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let e = self.denominator_exponent.max(other.denominator_exponent);
        (self.with_denominator(e), other.with_denominator(e))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let (c, s) = Self::add_laurent(&a.coeffs, a.shift, &b.coeffs, b.shift, 1);
        Self::new(c, s, a.denominator_exponent)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let (c, s) = Self::add_laurent(&a.coeffs, a.shift, &b.coeffs, b.shift, -1);
        Self::new(c, s, a.denominator_exponent)
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self::new(self.coeffs.clone(), self.shift + k, self.denominator_exponent)
    }

    /// Cancels common factors `(1-t)` between numerator and denominator.
    pub fn reduced(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let mut d = self.denominator_exponent;
        while d > 0 && !coeffs.is_empty() && coeffs.iter().sum::<BigInt>().is_zero() {
            // synthetic division by (1 - t): q_i = sum_{j<=i} c_j
            let mut q = Vec::with_capacity(coeffs.len() - 1);
            let mut acc = BigInt::zero();
            for c in &coeffs[..coeffs.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            coeffs = q;
            d -= 1;
        }
        Self::new(coeffs, self.shift, d)
    }

    /// Coefficient of `t^n` in the power-series expansion.
    pub fn coefficient(&self, n: i64) -> BigInt {
        let d = self.denominator_exponent as i64;
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = n - self.shift - i as i64;
            if k < 0 {
                continue;
            }
            if d == 0 {
                if k == 0 {
                    acc += c;
                }
                continue;
            }
            acc += c * binomial(k + d - 1, d - 1);
        }
        acc
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl PartialEq for RationalSeries {
    fn eq(&self, other: &Self) -> bool {
        let a = Self::mul_one_minus_t_pow(&self.coeffs, other.denominator_exponent);
        let b = Self::mul_one_minus_t_pow(&other.coeffs, self.denominator_exponent);
        let (c, _) = Self::add_laurent(&a, self.shift, &b, other.shift, -1);
        c.iter().all(Zero::is_zero)
    }
}

impl Eq for RationalSeries {}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.numerator();
        let mut num = String::new();
        for (k, (e, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    num.push('-');
                }
            } else {
                num.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                num.push_str(&mag.to_string());
            } else if mag.is_one() {
                num.push_str(&mono);
            } else {
                num.push_str(&format!("{mag}*{mono}"));
            }
        }
        if num.is_empty() {
            num.push('0');
        }
        match self.denominator_exponent {
            0 => write!(f, "{num}"),
            d => {
                if terms.len() > 1 {
                    num = format!("({num})");
                }
                if d == 1 {
                    write!(f, "{num}/(1-t)")
                } else {
                    write!(f, "{num}/(1-t)^{d}")
                }
            }
        }
    }
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(Monomial::degree);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    *gens = out;
}

/// Numerator `K` of `HS(R/J) = K / (1-t)^d` for a monomial ideal `J`.
fn quotient_numerator(mut gens: Vec<Monomial>) -> Vec<BigInt> {
    minimalize(&mut gens);
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![BigInt::one()];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![BigInt::zero(); acc.len() + d];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c;
                next[i + d] -= c;
            }
            acc = next;
        }
        return acc;
    }
    // K(J' + <m>) = K(J') - t^deg(m) K(J' : m)
    let m = gens.pop().unwrap();
    let colon: Vec<Monomial> = gens.iter().map(|g| g.checked_div(&g.gcd(&m)).unwrap()).collect();
    let base = quotient_numerator(gens);
    let sub = quotient_numerator(colon);
    let (c, _) = RationalSeries::add_laurent(&base, 0, &sub, m.degree() as i64, -1);
    c
}

fn series_parts<F: Field>(m: &Submodule<F>, quotient: bool) -> Result<RationalSeries> {
    m.generator_degrees()?;
    let d = m.ring().nvars() as u32;
    let gb = buchberger(m);
    let mut acc = RationalSeries::zero(d);
    for (p, lms) in gb.leading_monomials().into_iter().enumerate() {
        let k = quotient_numerator(lms);
        let part = if quotient {
            RationalSeries::new(k, 0, d)
        } else {
            let (c, s) = RationalSeries::add_laurent(&[BigInt::one()], 0, &k, 0, -1);
            RationalSeries::new(c, s, d)
        };
        acc = acc.add(&part.shifted(m.twists()[p]));
    }
    Ok(acc)
}

/// Hilbert series of the graded submodule `m` of `R^m` (twists taken from
/// the submodule), read off its leading-term module.
pub fn hilbert_series<F: Field>(m: &Submodule<F>) -> Result<RationalSeries> {
    series_parts(m, false)
}

/// Hilbert series of the quotient `R^m / m`.
pub fn hilbert_series_of_quotient<F: Field>(m: &Submodule<F>) -> Result<RationalSeries> {
    series_parts(m, true)
}
