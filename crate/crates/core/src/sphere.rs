//! Forms on the twisted sphere: the quotient of the ambient plane calculus
//! by the ideal `J` generated by `c - 1` and the kernel of `_ ^ dc`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::haar::Haar;
use crate::ncalg::{Ctx, Element, Monomial};
use crate::qphase::{rat, Coeff, ExactScalar};
use crate::tensor::{epsilon_q, epsilon_qinv, factorial, hodge_plane, pairing_plane};

/// Sphere dimension `N = D - 1` of the ambient context; errors for `D < 2`.
pub fn sphere_dim(ctx: &Ctx) -> Result<usize> {
    if ctx.dim() < 2 {
        return Err(Error::UnsupportedDimension(ctx.dim()));
    }
    Ok(ctx.dim() - 1)
}

/// Splits `f = (c - 1) * quotient + remainder` where no monomial of the
/// remainder contains both `x^1` and `x^D`. Works on forms of any degree.
pub fn reduce_with_quotient(f: &Element) -> (Element, Element) {
    let ctx = f.ctx();
    let d = ctx.dim();
    let mut quot = Element::zero(ctx);
    let mut rem = Element::zero(ctx);
    if d < 2 {
        return (quot, f.clone());
    }
    let x1xd = {
        let mut x = vec![0; d];
        x[0] = 1;
        x[d - 1] = 1;
        Monomial::new(x, &[])
    };
    // c - 2 x^1 x^D
    let rest: Vec<(Monomial, Coeff)> = Element::c(ctx)
        .terms()
        .filter(|(m, _)| **m != x1xd)
        .map(|(m, s)| (m.clone(), s.as_coeff().expect("c has rational coefficients")))
        .collect();
    let half = Coeff::rational(rat(1, 2));
    let mut work: BTreeMap<Monomial, ExactScalar> = f.terms().map(|(m, s)| (m.clone(), s.clone())).collect();
    while let Some((m, s)) = work.pop_last() {
        if m.x_exponent(1) == 0 || m.x_exponent(d) == 0 {
            rem.add_term(m, s);
            continue;
        }
        let mut x = m.xexp().to_vec();
        x[0] -= 1;
        x[d - 1] -= 1;
        let tail = Monomial::from_parts(x, m.dx_mask());
        // x^1 x^D * tail = phase * m
        let (_, phase, _) = x1xd.mul(&tail, ctx).expect("tail has no x-only clash");
        let s = s.mul_phase(&phase.inv()).scale(&half);
        // x^1 x^D = (c - 1)/2 + (1 - rest)/2
        quot.add_term(tail.clone(), s.clone());
        push(&mut work, tail.clone(), s.clone());
        for (rm, rc) in &rest {
            let (sign, p, full) = rm.mul(&tail, ctx).expect("rest has no differentials");
            debug_assert_eq!(sign, 1);
            push(&mut work, full, -s.mul_phase(&p).scale(rc));
        }
    }
    (quot, rem)
}

fn push(work: &mut BTreeMap<Monomial, ExactScalar>, m: Monomial, s: ExactScalar) {
    let e = work.entry(m.clone()).or_default();
    *e += &s;
    if e.is_zero() {
        work.remove(&m);
    }
}

/// Normal form of a function modulo `c - 1`.
pub fn reduce_mod_c(f: &Element) -> Result<Element> {
    f.expect_degree(0)?;
    Ok(reduce_with_quotient(f).1)
}

/// Contraction with half the Euler field: a graded derivation of degree -1
/// sending `dx^a` to `x^a / 2`, so that it maps `dc` to `c`.
pub fn euler_contraction(f: &Element) -> Element {
    let ctx = f.ctx();
    let d = ctx.dim();
    let mut out = Element::zero(ctx);
    for (m, s) in f.terms() {
        let set = m.dxset();
        for (j, &a) in set.iter().enumerate() {
            let before: Vec<usize> = set[..j].to_vec();
            let after: Vec<usize> = set[j + 1..].to_vec();
            let left = Monomial::new(m.xexp().to_vec(), &before);
            let right = Monomial::new(vec![0; d], &after);
            let (s1, p1, lm) = left.mul(&Monomial::x_generator(d, a), ctx).expect("x generator");
            let (s2, p2, full) = lm.mul(&right, ctx).expect("disjoint");
            let mut c = s.mul_phase(&p1.mul(&p2)).scale(&Coeff::rational(rat(1, 2)));
            if (s1 * s2 < 0) != (j % 2 == 1) {
                c = -c;
            }
            out.add_term(full, c);
        }
    }
    out
}

/// Whether `delta` lies in `J`: exactly when `dc ^ delta` is a multiple of `c - 1`.
pub fn in_ideal(delta: &Element) -> bool {
    let dc = Element::dc(delta.ctx());
    reduce_with_quotient(&(&dc * delta)).1.is_zero()
}

/// For `delta` in `J`, returns `(alpha, beta)` with
/// `delta = (c - 1) alpha + dc ^ beta`; `None` otherwise.
pub fn ideal_certificate(delta: &Element) -> Option<(Element, Element)> {
    let ctx = delta.ctx();
    let dc = Element::dc(ctx);
    let (quot, rem) = reduce_with_quotient(&(&dc * delta));
    if !rem.is_zero() {
        return None;
    }
    let alpha = &euler_contraction(&quot) - delta;
    let beta = euler_contraction(delta);
    Some((alpha, beta))
}

/// `[a] = [b]` in the sphere calculus.
pub fn sphere_equal(a: &Element, b: &Element) -> Result<bool> {
    a.check_ctx(b)?;
    if let (Some(x), Some(y)) = (a.form_degree()?, b.form_degree()?) {
        if x != y {
            return Err(Error::DegreeMismatch { expected: x, got: y });
        }
    }
    Ok(in_ideal(&(a - b)))
}

/// `omega_k = (1/N!) i^[D/2] eps_{q^-1}{}_{s_1..s_N k} dx^{s_1} ... dx^{s_N}`.
pub fn omega_k(ctx: &Ctx, k: usize) -> Result<Element> {
    let n = sphere_dim(ctx)?;
    ctx.check_index(k)?;
    let others: Vec<usize> = (1..=ctx.dim()).filter(|&a| a != k).collect();
    let mut out = Element::zero(ctx);
    for s in others.iter().copied().permutations(n) {
        let mut full = s.clone();
        full.push(k);
        let eps = epsilon_qinv(ctx, &full)?;
        out = &out + &Element::dx_word(ctx, &s)?.scale(&eps);
    }
    let norm = Coeff::i_pow((ctx.dim() / 2) as i64).scale(&rat(1, factorial(n)));
    Ok(out.scale_coeff(&norm))
}

/// Representative `sum_k x^k omega_k` of the volume form.
pub fn volume_rep(ctx: &Ctx) -> Result<Element> {
    let mut out = Element::zero(ctx);
    for k in 1..=ctx.dim() {
        out = &out + &(&Element::x(ctx, k)? * &omega_k(ctx, k)?);
    }
    Ok(out)
}

/// The function `f` with `omega ^ dc / 2 = f V_D`.
pub fn top_decompose(omega: &Element) -> Result<Element> {
    let ctx = omega.ctx();
    let n = sphere_dim(ctx)?;
    omega.expect_degree(n)?;
    let top = omega * &Element::dc(ctx);
    let scale = Coeff::i_pow(-((ctx.dim() / 2) as i64)).scale(&rat(1, 2));
    let mut out = Element::zero(ctx);
    for (m, s) in top.terms() {
        out.add_term(m.x_part(), s.scale(&scale));
    }
    Ok(out)
}

/// `int [omega] = h(f_omega)`.
pub fn integrate(omega: &Element) -> Result<ExactScalar> {
    Haar::new(omega.ctx()).eval(&top_decompose(omega)?)
}

/// `C'_{N,k} = (-i)^[(N+1)/2] (-1)^[(N-k)/2] (-1)^(N-k) / (N-k)!`.
pub fn sphere_hodge_constant(n: usize, k: usize) -> Coeff {
    let c = Coeff::i_pow(-(n.div_ceil(2) as i64));
    let flips = (n - k) / 2 + (n - k);
    let c = if flips % 2 == 1 { -c } else { c };
    c.scale(&rat(1, factorial(n - k)))
}

/// Sphere Hodge dual of `[dx^{i1} ... dx^{ik}]`, as a representative.
pub fn hodge_sphere_basis(ctx: &Ctx, indices: &[usize]) -> Result<Element> {
    let n = sphere_dim(ctx)?;
    let k = indices.len();
    if k > n {
        return Ok(Element::zero(ctx));
    }
    let free: Vec<usize> = (1..=ctx.dim()).filter(|a| !indices.contains(a)).collect();
    if free.len() != n + 1 - k {
        return Ok(Element::zero(ctx));
    }
    let mut out = Element::zero(ctx);
    for tail in free.iter().copied().permutations(n + 1 - k) {
        let (a, ls) = (tail[0], &tail[1..]);
        let full = [indices, &tail].concat();
        let eps = epsilon_q(ctx, &full)?;
        let dual: Vec<usize> = ls.iter().rev().map(|&l| ctx.primed(l)).collect();
        let term = &Element::dx_word(ctx, &dual)? * &Element::x(ctx, ctx.primed(a))?;
        out = &out + &term.scale(&eps);
    }
    Ok(out.scale_coeff(&sphere_hodge_constant(n, k)))
}

/// Sphere Hodge star on homogeneous representatives of degree `k <= N`.
pub fn hodge_sphere(theta: &Element) -> Result<Element> {
    let ctx = theta.ctx();
    let n = sphere_dim(ctx)?;
    if let Some(k) = theta.form_degree()? {
        if k > n {
            return Err(Error::DegreeMismatch { expected: n, got: k });
        }
    }
    let mut out = Element::zero(ctx);
    let mut cache: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
    for (m, f) in theta.terms() {
        let set = m.dxset();
        if !cache.contains_key(&set) {
            cache.insert(set.clone(), hodge_sphere_basis(ctx, &set)?);
        }
        let left = Element::term(ctx, m.x_part(), f.clone());
        out = &out + &(&left * &cache[&set]);
    }
    Ok(out)
}

/// `(-1)^(N-k) [*(beta ^ dc / 2)]`, the sphere Hodge star through the plane one.
pub fn hodge_sphere_via_plane(beta: &Element) -> Result<Element> {
    let ctx = beta.ctx();
    let n = sphere_dim(ctx)?;
    let k = beta.form_degree()?.unwrap_or(0);
    let lifted = (beta * &Element::dc(ctx)).scale_coeff(&Coeff::rational(rat(1, 2)));
    let h = hodge_plane(&lifted)?;
    Ok(if (n - k) % 2 == 1 { -h } else { h })
}

/// `<[alpha], [beta]> = 1/4 [<alpha ^ dc, beta ^ dc>]`.
pub fn pairing_sphere(alpha: &Element, beta: &Element) -> Result<Element> {
    let dc = Element::dc(alpha.ctx());
    let p = pairing_plane(&(alpha * &dc), &(beta * &dc))?;
    Ok(p.scale_coeff(&Coeff::rational(rat(1, 4))))
}

/// A class in the sphere calculus, held through a plane representative.
#[derive(Debug, Clone)]
pub struct SphereForm {
    rep: Element,
}

impl SphereForm {
    pub fn new(rep: Element) -> Result<Self> {
        sphere_dim(rep.ctx())?;
        Ok(SphereForm { rep })
    }

    pub fn volume(ctx: &Ctx) -> Result<Self> {
        SphereForm::new(volume_rep(ctx)?)
    }

    pub fn rep(&self) -> &Element {
        &self.rep
    }

    pub fn into_rep(self) -> Element {
        self.rep
    }

    pub fn ctx(&self) -> &Ctx {
        self.rep.ctx()
    }

    pub fn sphere_dim(&self) -> usize {
        self.rep.dim() - 1
    }

    pub fn equals(&self, other: &SphereForm) -> Result<bool> {
        sphere_equal(&self.rep, &other.rep)
    }

    pub fn is_zero(&self) -> bool {
        in_ideal(&self.rep)
    }

    pub fn d(&self) -> SphereForm {
        SphereForm { rep: self.rep.d() }
    }

    pub fn star(&self) -> SphereForm {
        SphereForm { rep: self.rep.star() }
    }

    pub fn hodge(&self) -> Result<SphereForm> {
        Ok(SphereForm { rep: hodge_sphere(&self.rep)? })
    }

    pub fn pairing(&self, other: &SphereForm) -> Result<SphereForm> {
        Ok(SphereForm { rep: pairing_sphere(&self.rep, &other.rep)? })
    }

    pub fn integrate(&self) -> Result<ExactScalar> {
        integrate(&self.rep)
    }

    pub fn scale(&self, s: &ExactScalar) -> SphereForm {
        SphereForm { rep: self.rep.scale(s) }
    }

    /// Representative with functions reduced modulo `c - 1`.
    pub fn reduced(&self) -> SphereForm {
        SphereForm { rep: reduce_with_quotient(&self.rep).1 }
    }
}

impl Add for &SphereForm {
    type Output = SphereForm;
    fn add(self, o: &SphereForm) -> SphereForm {
        SphereForm { rep: &self.rep + &o.rep }
    }
}

impl Sub for &SphereForm {
    type Output = SphereForm;
    fn sub(self, o: &SphereForm) -> SphereForm {
        SphereForm { rep: &self.rep - &o.rep }
    }
}

impl Mul for &SphereForm {
    type Output = SphereForm;
    fn mul(self, o: &SphereForm) -> SphereForm {
        SphereForm { rep: &self.rep * &o.rep }
    }
}

impl Neg for &SphereForm {
    type Output = SphereForm;
    fn neg(self) -> SphereForm {
        SphereForm { rep: -&self.rep }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::expr::parse_expr;
    use crate::qphase::DeformationContext;

    fn ctx(d: usize) -> Ctx {
        Arc::new(DeformationContext::new(d).unwrap())
    }

    #[test]
    fn reduce_examples() {
        for d in 2..=6 {
            let c = ctx(d);
            let cc = Element::c(&c);
            assert_eq!(reduce_mod_c(&cc).unwrap(), Element::one(&c));
            let x2 = Element::x(&c, 2.min(d)).unwrap();
            let m = &(&cc - &Element::one(&c)) * &x2;
            assert!(reduce_mod_c(&m).unwrap().is_zero());
        }
        let c = ctx(3);
        let f = parse_expr(&c, "x2^2 + 2*x1*x3").unwrap();
        assert_eq!(reduce_mod_c(&f).unwrap(), Element::one(&c));
        assert!(reduce_mod_c(&Element::dx(&c, 1).unwrap()).is_err());
    }

    #[test]
    fn quotient_reconstructs_input() {
        let c = ctx(5);
        let f = parse_expr(&c, "x1^3*x5^2*x2 + x1*x5*dx2 + q(1,2)*x4*x1*x5*x2*dx1*dx3 + 7").unwrap();
        let (q, r) = reduce_with_quotient(&f);
        let cm1 = &Element::c(&c) - &Element::one(&c);
        assert_eq!(&(&cm1 * &q) + &r, f);
        let (_, r2) = reduce_with_quotient(&r);
        assert_eq!(r2, r);
    }

    #[test]
    fn dc_is_graded_central_and_squares_to_zero() {
        let c = ctx(5);
        let dc = Element::dc(&c);
        assert!((&dc * &dc).is_zero());
        for a in 1..=5 {
            let x = Element::x(&c, a).unwrap();
            let dx = Element::dx(&c, a).unwrap();
            assert_eq!(&dc * &x, &x * &dc);
            assert_eq!(&dc * &dx, -(&dx * &dc));
        }
    }

    #[test]
    fn euler_contraction_of_dc_is_c() {
        for d in 2..=5 {
            let c = ctx(d);
            assert_eq!(euler_contraction(&Element::dc(&c)), Element::c(&c));
        }
    }

    #[test]
    fn omega_and_volume() {
        for d in 2..=5 {
            let c = ctx(d);
            let v = Element::volume(&c);
            for k in 1..=d {
                let w = omega_k(&c, k).unwrap();
                for l in 1..=d {
                    let lhs = &w * &Element::dx(&c, l).unwrap();
                    let rhs = if k == l { v.clone() } else { Element::zero(&c) };
                    assert_eq!(lhs, rhs, "D={d} k={k} l={l}");
                }
            }
            let vol = volume_rep(&c).unwrap();
            let two_c_v = (&Element::c(&c) * &v).scale(&ExactScalar::int(2));
            assert_eq!(&vol * &Element::dc(&c), two_c_v);
            assert_eq!(top_decompose(&vol).unwrap(), Element::c(&c));
            assert!(integrate(&vol).unwrap().is_one());
            assert!(top_decompose(&Element::zero(&c)).unwrap().is_zero());
        }
    }

    #[test]
    fn ideal_membership_examples() {
        let c = ctx(5);
        let vol = volume_rep(&c).unwrap();
        let cc = Element::c(&c);
        assert!(sphere_equal(&(&cc * &vol), &vol).unwrap());
        let beta = parse_expr(&c, "x2*dx1*dx4 + q(1,2)*x1^2*dx3*dx5").unwrap();
        let member = &Element::dc(&c) * &beta;
        assert!(sphere_equal(&member, &Element::zero(&c)).unwrap());
        assert!(sphere_equal(&vol, &vol).unwrap());
        assert!(!sphere_equal(&vol, &Element::zero(&c)).unwrap());
        assert!(sphere_equal(&vol, &Element::dx(&c, 1).unwrap()).is_err());
    }

    #[test]
    fn certificates_verify() {
        let c = ctx(5);
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let dc = Element::dc(&c);
        let a = parse_expr(&c, "x1*x2*dx3 + x5*dx4").unwrap();
        let b = parse_expr(&c, "x3^2 + q(1,2)*x2*x4*x1").unwrap();
        let delta = &(&cm1 * &a) + &(&dc * &b);
        let (alpha, beta) = ideal_certificate(&delta).unwrap();
        assert_eq!(&(&cm1 * &alpha) + &(&dc * &beta), delta);
        assert!(ideal_certificate(&Element::dx(&c, 2).unwrap()).is_none());
    }
}
