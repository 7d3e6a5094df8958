use std::fmt;

use crate::qphase::{DeformationContext, PhaseMonomial};

/// Canonical monomial `x^a1 ... x^aD dx^s1 ... dx^sk`: all coordinates in
/// ascending index order, then the differentials in ascending order.
/// Bit `a-1` of `dx` marks `dx^a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    dx: u32,
}

/// A single generator of the algebra of forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X(usize),
    Dx(usize),
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial { x: vec![0; dim], dx: 0 }
    }

    /// Panics if `x.len()` exceeds 32 or an index in `dx` is out of range.
    pub fn new(x: Vec<u32>, dx: &[usize]) -> Self {
        let mut mask = 0u32;
        for &a in dx {
            assert!(a >= 1 && a <= x.len(), "dx index {a} out of range");
            mask |= 1 << (a - 1);
        }
        Monomial { x, dx: mask }
    }

    pub(crate) fn from_parts(x: Vec<u32>, dx: u32) -> Self {
        Monomial { x, dx }
    }

    pub fn x_generator(dim: usize, a: usize) -> Self {
        let mut m = Monomial::one(dim);
        m.x[a - 1] = 1;
        m
    }

    pub fn dx_generator(dim: usize, a: usize) -> Self {
        Monomial { x: vec![0; dim], dx: 1 << (a - 1) }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn xexp(&self) -> &[u32] {
        &self.x
    }

    pub fn x_exponent(&self, a: usize) -> u32 {
        self.x[a - 1]
    }

    pub(crate) fn dx_mask(&self) -> u32 {
        self.dx
    }

    /// Ascending list of differential indices.
    pub fn dxset(&self) -> Vec<usize> {
        (1..=self.x.len()).filter(|&a| self.dx & (1 << (a - 1)) != 0).collect()
    }

    pub fn form_degree(&self) -> usize {
        self.dx.count_ones() as usize
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.dx == 0 && self.x.iter().all(|&e| e == 0)
    }

    pub fn x_part(&self) -> Monomial {
        Monomial { x: self.x.clone(), dx: 0 }
    }

    pub fn dx_part(&self) -> Monomial {
        Monomial { x: vec![0; self.x.len()], dx: self.dx }
    }

    /// The product `self * other` in canonical order, as `(sign, phase, monomial)`,
    /// or `None` when a differential repeats.
    pub fn mul(&self, other: &Monomial, ctx: &DeformationContext) -> Option<(i32, PhaseMonomial, Monomial)> {
        if self.dx & other.dx != 0 {
            return None;
        }
        let dim = self.x.len();
        let mut phase = PhaseMonomial::one();
        let mut sign = 1;
        if !ctx.is_commutative() {
            for b in 1..=dim {
                let beta = other.x[b - 1] as i32;
                if beta == 0 {
                    continue;
                }
                // moving x^b left past dx^s and then past x^a with a > b
                for s in 1..=dim {
                    if self.dx & (1 << (s - 1)) != 0 {
                        phase.mul_pow_assign(ctx.q(s, b), beta);
                    }
                }
                for a in b + 1..=dim {
                    let alpha = self.x[a - 1] as i32;
                    if alpha != 0 {
                        phase.mul_pow_assign(ctx.q(a, b), alpha * beta);
                    }
                }
            }
        }
        for t in 1..=dim {
            if other.dx & (1 << (t - 1)) == 0 {
                continue;
            }
            for s in t + 1..=dim {
                if self.dx & (1 << (s - 1)) != 0 {
                    sign = -sign;
                    phase.mul_pow_assign(ctx.q(s, t), 1);
                }
            }
        }
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect();
        Some((sign, phase, Monomial { x, dx: self.dx | other.dx }))
    }
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::X(a) | Generator::Dx(a) => a,
        }
    }

    pub fn monomial(self, dim: usize) -> Monomial {
        match self {
            Generator::X(a) => Monomial::x_generator(dim, a),
            Generator::Dx(a) => Monomial::dx_generator(dim, a),
        }
    }
}

impl fmt::Display for Monomial {
    /// `x1^2*x3*dx2*dx4`, or `1` for the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", k + 1)),
                _ => parts.push(format!("x{}^{e}", k + 1)),
            }
        }
        for a in self.dxset() {
            parts.push(format!("dx{a}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_x1_picks_up_inverse_phase() {
        let ctx = DeformationContext::new(5).unwrap();
        let (s, p, m) = Monomial::x_generator(5, 2).mul(&Monomial::x_generator(5, 1), &ctx).unwrap();
        assert_eq!(s, 1);
        assert_eq!(p, PhaseMonomial::generator(0, -1));
        assert_eq!(m, Monomial::new(vec![1, 1, 0, 0, 0], &[]));
    }

    #[test]
    fn repeated_differential_vanishes() {
        let ctx = DeformationContext::new(5).unwrap();
        let d1 = Monomial::dx_generator(5, 1);
        assert!(d1.mul(&d1, &ctx).is_none());
    }

    #[test]
    fn dx_swap_sign_and_phase() {
        let ctx = DeformationContext::new(4).unwrap();
        let (s, p, _) = Monomial::dx_generator(4, 2).mul(&Monomial::dx_generator(4, 1), &ctx).unwrap();
        assert_eq!(s, -1);
        assert_eq!(p, PhaseMonomial::generator(0, -1));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(vec![2, 0, 1, 0], &[2, 4]).to_string(), "x1^2*x3*dx2*dx4");
        assert_eq!(Monomial::one(3).to_string(), "1");
    }
}
