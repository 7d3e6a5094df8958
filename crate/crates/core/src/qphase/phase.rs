use std::fmt;

/// A Laurent monomial in the independent deformation parameters, stored as an
/// exponent vector. Trailing zero exponents are trimmed so that the unit
/// monomial has a single representation independent of the parameter count.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseMonomial(Vec<i32>);

impl PhaseMonomial {
    pub fn one() -> Self {
        PhaseMonomial(Vec::new())
    }

    /// The `param`-th generator raised to `exp`.
    pub fn generator(param: usize, exp: i32) -> Self {
        let mut v = vec![0; param + 1];
        v[param] = exp;
        PhaseMonomial::from_exponents(v)
    }

    pub fn from_exponents(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        PhaseMonomial(v)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Exponent of parameter `param` (zero past the stored length).
    pub fn exponent(&self, param: usize) -> i32 {
        self.0.get(param).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &PhaseMonomial) -> PhaseMonomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        PhaseMonomial::from_exponents(v)
    }

    /// Multiplies in place by `other^times`.
    pub fn mul_pow_assign(&mut self, other: &PhaseMonomial, times: i32) {
        if times == 0 || other.is_one() {
            return;
        }
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (e, o) in self.0.iter_mut().zip(&other.0) {
            *e += o * times;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn pow(&self, k: i32) -> PhaseMonomial {
        PhaseMonomial::from_exponents(self.0.iter().map(|e| e * k).collect())
    }

    /// Inverse, which for unit-modulus parameters is also the complex conjugate.
    pub fn inv(&self) -> PhaseMonomial {
        self.pow(-1)
    }

    /// Largest absolute exponent, used to size root-of-unity moduli.
    pub fn max_abs_exponent(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Renders `q(a,b)^k` factors joined by `*`, or `1` for the unit.
pub(crate) struct PhaseDisplay<'a> {
    pub phase: &'a PhaseMonomial,
    pub params: &'a [(usize, usize)],
}

impl fmt::Display for PhaseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.phase.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match self.params.get(i) {
                Some((a, b)) => write!(f, "q({a},{b})")?,
                None => write!(f, "q#{i}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}
