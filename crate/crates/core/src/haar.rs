//! Twisted partial derivatives, the Laplacian and the Haar functional.

use std::collections::HashMap;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element, Monomial};
use crate::qphase::{Coeff, DeformationContext, ExactScalar, PhaseMonomial, Rational};

/// `lambda_n = 1 / (2^n n! (D,2)_n)` with `(x,a)_n = x (x+a) ... (x+(n-1)a)`.
pub fn lambda_n(dim: usize, n: usize) -> Rational {
    let mut den = BigInt::one();
    for j in 0..n {
        den *= BigInt::from(2 * (j + 1) * (dim + 2 * j));
    }
    Rational::new(BigInt::one(), den)
}

fn expect_functions(f: &Element) -> Result<()> {
    f.expect_degree(0)
}

/// `d_s x^alpha = alpha_s prod_{a<s} q_as^{alpha_a} x^{alpha - e_s}`.
fn partial_monomial(ctx: &DeformationContext, s: usize, m: &Monomial) -> Option<(u32, PhaseMonomial, Monomial)> {
    let alpha = m.xexp();
    let k = alpha[s - 1];
    if k == 0 {
        return None;
    }
    let mut phase = PhaseMonomial::one();
    for a in 1..s {
        phase.mul_pow_assign(ctx.q(a, s), alpha[a - 1] as i32);
    }
    let mut x = alpha.to_vec();
    x[s - 1] -= 1;
    Some((k, phase, Monomial::new(x, &[])))
}

/// The twisted derivative `d_s` on functions.
pub fn partial(s: usize, f: &Element) -> Result<Element> {
    let ctx = f.ctx();
    ctx.check_index(s)?;
    expect_functions(f)?;
    let mut out = Element::zero(ctx);
    for (m, c) in f.terms() {
        if let Some((k, p, m2)) = partial_monomial(ctx, s, m) {
            out.add_term(m2, c.mul_phase(&p).scale(&Coeff::int(k as i64)));
        }
    }
    Ok(out)
}

/// `Delta = sum_i d_i d_i'`.
pub fn laplacian(f: &Element) -> Result<Element> {
    expect_functions(f)?;
    let ctx = f.ctx();
    let mut out = Element::zero(ctx);
    for (m, c) in f.terms() {
        for (m2, s) in laplacian_monomial(ctx, m) {
            out.add_term(m2, c * &s);
        }
    }
    Ok(out)
}

fn laplacian_monomial(ctx: &DeformationContext, m: &Monomial) -> Vec<(Monomial, ExactScalar)> {
    let mut out = Vec::new();
    for i in 1..=ctx.dim() {
        let Some((k1, p1, m1)) = partial_monomial(ctx, ctx.primed(i), m) else { continue };
        let Some((k2, p2, m2)) = partial_monomial(ctx, i, &m1) else { continue };
        let s = ExactScalar::term(Coeff::int((k1 * k2) as i64), p1.mul(&p2));
        out.push((m2, s));
    }
    out
}

/// Haar functional with a per-monomial cache, reusable across calls.
#[derive(Debug)]
pub struct Haar {
    ctx: Ctx,
    cache: HashMap<Monomial, ExactScalar>,
}

impl Haar {
    pub fn new(ctx: &Ctx) -> Self {
        Haar { ctx: ctx.clone(), cache: HashMap::new() }
    }

    pub fn eval(&mut self, f: &Element) -> Result<ExactScalar> {
        expect_functions(f)?;
        if **f.ctx() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let ctx = self.ctx.clone();
        let ctx = &*ctx;
        let mut acc = ExactScalar::zero();
        for (m, c) in f.terms() {
            let h = self.monomial(ctx, m);
            acc += &(c * &h);
        }
        Ok(acc)
    }

    /// `h(x^alpha) = lambda_n Delta^n x^alpha`, computed through
    /// `h(m) = h(Delta m) / (2n (D + 2n - 2))`.
    fn monomial(&mut self, ctx: &DeformationContext, m: &Monomial) -> ExactScalar {
        let deg = m.x_degree() as usize;
        if deg == 0 {
            return ExactScalar::one();
        }
        if deg % 2 == 1 {
            return ExactScalar::zero();
        }
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let n = deg / 2;
        let mut acc = ExactScalar::zero();
        for (m2, s) in laplacian_monomial(ctx, m) {
            let h = self.monomial(ctx, &m2);
            acc += &(&s * &h);
        }
        let r = Rational::new(BigInt::one(), BigInt::from(2 * n * (ctx.dim() + 2 * n - 2)));
        let v = acc.scale_rational(&r);
        self.cache.insert(m.clone(), v.clone());
        v
    }
}

/// The Haar functional on plane representatives of sphere functions.
pub fn haar_plane(f: &Element) -> Result<ExactScalar> {
    Haar::new(f.ctx()).eval(f)
}
