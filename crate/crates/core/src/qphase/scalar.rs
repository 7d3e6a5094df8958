use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::complex::Complex64;

use super::coeff::{Coeff, Rational};
use super::phase::{PhaseDisplay, PhaseMonomial};

/// Finite sum of `Coeff * PhaseMonomial` terms: the scalar ring of the calculus.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar {
    terms: BTreeMap<PhaseMonomial, Coeff>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_coeff(Coeff::one())
    }

    pub fn int(n: i64) -> Self {
        ExactScalar::from_coeff(Coeff::int(n))
    }

    pub fn rational(r: Rational) -> Self {
        ExactScalar::from_coeff(Coeff::rational(r))
    }

    pub fn from_coeff(c: Coeff) -> Self {
        ExactScalar::term(c, PhaseMonomial::one())
    }

    pub fn phase(p: PhaseMonomial) -> Self {
        ExactScalar::term(Coeff::one(), p)
    }

    pub fn term(c: Coeff, p: PhaseMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        ExactScalar { terms }
    }

    pub fn i() -> Self {
        ExactScalar::from_coeff(Coeff::i())
    }

    pub fn sqrt2() -> Self {
        ExactScalar::from_coeff(Coeff::sqrt2())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(p, c)| p.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PhaseMonomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient if the scalar carries no phase dependence.
    pub fn as_coeff(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.iter().next().filter(|(p, _)| p.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, p: PhaseMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Coeff::rational(r.clone()))
    }

    pub fn mul_phase(&self, q: &PhaseMonomial) -> Self {
        if q.is_one() {
            return self.clone();
        }
        ExactScalar { terms: self.terms.iter().map(|(p, c)| (p.mul(q), c.clone())).collect() }
    }

    /// Complex conjugation: conjugates coefficients and inverts every phase.
    pub fn conj(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(p, c)| (p.inv(), c.conj())).collect() }
    }

    /// Substitutes `q -> q^-1` in every phase, leaving coefficients alone.
    pub fn invert_phases(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(p, c)| (p.inv(), c.clone())).collect() }
    }

    /// Evaluates with parameter `p` sent to `values[p]`.
    pub fn eval_with(&self, values: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(p, c)| {
                let mut z = c.to_complex();
                for (k, &e) in p.exponents().iter().enumerate() {
                    z *= values.get(k).copied().unwrap_or(Complex64::new(1.0, 0.0)).powi(e);
                }
                z
            })
            .sum()
    }

    /// Evaluates with parameter `p` sent to `exp(i theta[p])`.
    pub fn eval(&self, theta: &[f64]) -> Complex64 {
        let values: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        self.eval_with(&values)
    }

    /// Largest absolute phase exponent occurring in any term.
    pub fn max_abs_exponent(&self) -> u32 {
        self.terms.keys().map(PhaseMonomial::max_abs_exponent).max().unwrap_or(0)
    }

    /// Formats with phase generators named by `params`, e.g. `1/2*q(1,2)^-1 + i`.
    pub fn display<'a>(&'a self, params: &'a [(usize, usize)]) -> ScalarDisplay<'a> {
        ScalarDisplay { scalar: self, params }
    }

    /// One product string per rational component, in the flat text grammar.
    pub(crate) fn flat_terms(&self, params: &[(usize, usize)]) -> Vec<String> {
        let mut out = Vec::new();
        for (p, c) in &self.terms {
            for t in c.flat_terms() {
                if p.is_one() {
                    out.push(t);
                } else if t == "1" {
                    out.push(PhaseDisplay { phase: p, params }.to_string());
                } else {
                    out.push(format!("{t}*{}", PhaseDisplay { phase: p, params }));
                }
            }
        }
        out
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a ExactScalar,
    params: &'a [(usize, usize)],
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.scalar.flat_terms(self.params);
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&[]).fmt(f)
    }
}

impl From<Coeff> for ExactScalar {
    fn from(c: Coeff) -> Self {
        ExactScalar::from_coeff(c)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        for (p, c) in &o.terms {
            self.add_term(p.clone(), c.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        for (p, c) in &o.terms {
            self.add_term(p.clone(), -c);
        }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        let mut r = ExactScalar::zero();
        for (p, c) in &self.terms {
            for (q, d) in &o.terms {
                r.add_term(p.mul(q), c * d);
            }
        }
        r
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect() }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}
