use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// An element `p + q i + r sqrt2 + s i sqrt2` of the field Q(i, sqrt2).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coeff {
    /// Components on the basis `1, i, sqrt2, i sqrt2`.
    c: [Rational; 4],
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Self {
        Coeff { c: [p, q, r, s] }
    }

    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Coeff::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        Coeff::rational(Rational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        Coeff::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Coeff::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Coeff::one(),
            1 => Coeff::i(),
            2 => Coeff::int(-1),
            _ => -Coeff::i(),
        }
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Complex conjugation: `i -> -i`, `sqrt2 -> sqrt2`.
    pub fn conj(&self) -> Self {
        let [p, q, r, s] = &self.c;
        Coeff::new(p.clone(), -q, r.clone(), -s)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Coeff { c: self.c.clone().map(|x| x * r) }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Multiply by the Galois conjugates: z * conj(z) is real in Q(sqrt2),
        // then rationalise with the sqrt2 -> -sqrt2 conjugate.
        let zc = self.conj();
        let n = self * &zc;
        let [a, _, b, _] = n.c.clone();
        let nbar = Coeff::new(a.clone(), Rational::zero(), -b.clone(), Rational::zero());
        let norm = &a * &a - Rational::from_integer(2.into()) * &b * &b;
        let inv_norm = Rational::one() / norm;
        Some((&zc * &nbar).scale(&inv_norm))
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        let s2 = std::f64::consts::SQRT_2;
        Complex64::new(f(&self.c[0]) + s2 * f(&self.c[2]), f(&self.c[1]) + s2 * f(&self.c[3]))
    }

    /// The coefficient as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff { c: std::array::from_fn(|k| &self.c[k] + &o.c[k]) }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff { c: std::array::from_fn(|k| &self.c[k] - &o.c[k]) }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &o.c;
        let two = Rational::from_integer(2.into());
        // basis products: i*i = -1, s*s = 2, i*s = is, i*is = -s, s*is = 2i, is*is = -2
        let re = a * e - b * f + &two * (c * g - d * h);
        let im = a * f + b * e + &two * (c * h + d * g);
        let s = a * g + c * e - b * h - d * f;
        let is = a * h + d * e + b * g + c * f;
        Coeff::new(re, im, s, is)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { c: self.c.map(|x| -x) }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -self.clone()
    }
}

impl fmt::Display for Coeff {
    /// Flat `+`-joined grammar, e.g. `1/2 + -3*i*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.flat_terms();
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coeff {
    /// One product string per nonzero component, e.g. `-3/2*i*sqrt2`.
    pub(crate) fn flat_terms(&self) -> Vec<String> {
        const UNITS: [&str; 4] = ["", "i", "sqrt2", "i*sqrt2"];
        let mut out = Vec::new();
        for (k, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let unit = UNITS[k];
            let s = if unit.is_empty() {
                fmt_rational(r)
            } else if r.is_one() {
                unit.to_string()
            } else if (-r).is_one() {
                format!("-1*{unit}")
            } else {
                format!("{}*{unit}", fmt_rational(r))
            };
            out.push(s);
        }
        out
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
