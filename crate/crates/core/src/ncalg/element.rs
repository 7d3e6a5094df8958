use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::{Generator, Monomial};
use crate::error::{Error, Result};
use crate::qphase::{Coeff, DeformationContext, ExactScalar};

/// Shared handle to a deformation context.
pub type Ctx = Arc<DeformationContext>;

/// A differential form on the twisted plane: a sparse sum of canonical
/// monomials with exact scalar coefficients.
#[derive(Debug, Clone)]
pub struct Element {
    ctx: Ctx,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Element {}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn zero(ctx: &Ctx) -> Self {
        Element { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Element::scalar(ctx, ExactScalar::one())
    }

    pub fn scalar(ctx: &Ctx, s: ExactScalar) -> Self {
        Element::term(ctx, Monomial::one(ctx.dim()), s)
    }

    pub fn term(ctx: &Ctx, m: Monomial, s: ExactScalar) -> Self {
        assert_eq!(m.dim(), ctx.dim(), "monomial dimension does not match context");
        let mut e = Element::zero(ctx);
        e.add_term(m, s);
        e
    }

    pub fn monomial(ctx: &Ctx, m: Monomial) -> Self {
        Element::term(ctx, m, ExactScalar::one())
    }

    pub fn x(ctx: &Ctx, a: usize) -> Result<Self> {
        ctx.check_index(a)?;
        Ok(Element::monomial(ctx, Monomial::x_generator(ctx.dim(), a)))
    }

    pub fn dx(ctx: &Ctx, a: usize) -> Result<Self> {
        ctx.check_index(a)?;
        Ok(Element::monomial(ctx, Monomial::dx_generator(ctx.dim(), a)))
    }

    /// Canonical form of a product of generators.
    pub fn normal_order(ctx: &Ctx, word: &[Generator]) -> Result<Self> {
        let mut acc = Element::one(ctx);
        for g in word {
            ctx.check_index(g.index())?;
            acc = acc.mul_monomial(&g.monomial(ctx.dim()));
        }
        Ok(acc)
    }

    /// `dx^{i1} ... dx^{ik}` in canonical form.
    pub fn dx_word(ctx: &Ctx, indices: &[usize]) -> Result<Self> {
        let word: Vec<Generator> = indices.iter().map(|&a| Generator::Dx(a)).collect();
        Element::normal_order(ctx, &word)
    }

    /// The central element `c = x^a g_ab x^b`.
    pub fn c(ctx: &Ctx) -> Self {
        let d = ctx.dim();
        let mut e = Element::zero(ctx);
        for a in 1..=d {
            let b = ctx.primed(a);
            let mut x = vec![0; d];
            x[a - 1] += 1;
            x[b - 1] += 1;
            e.add_term(Monomial::new(x, &[]), ExactScalar::one());
        }
        e
    }

    /// `dc`.
    pub fn dc(ctx: &Ctx) -> Self {
        Element::c(ctx).d()
    }

    /// `V_D = i^[D/2] dx^1 ... dx^D`.
    pub fn volume(ctx: &Ctx) -> Self {
        let d = ctx.dim();
        let all: Vec<usize> = (1..=d).collect();
        let s = ExactScalar::from_coeff(Coeff::i_pow((d / 2) as i64));
        Element::term(ctx, Monomial::new(vec![0; d], &all), s)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, ExactScalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The scalar value if the element is a constant.
    pub fn as_scalar(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, s)| s.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, s: ExactScalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(s);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Form degree if homogeneous; `None` for the zero element.
    pub fn form_degree(&self) -> Result<Option<usize>> {
        let mut it = self.terms.keys().map(Monomial::form_degree);
        let Some(k) = it.next() else { return Ok(None) };
        if it.all(|j| j == k) {
            Ok(Some(k))
        } else {
            Err(Error::MixedDegree)
        }
    }

    /// Errors unless every term has form degree `k`.
    pub fn expect_degree(&self, k: usize) -> Result<()> {
        match self.form_degree()? {
            Some(j) if j != k => Err(Error::DegreeMismatch { expected: k, got: j }),
            _ => Ok(()),
        }
    }

    /// The component of form degree `k`.
    pub fn part(&self, k: usize) -> Element {
        self.filter(|m| m.form_degree() == k)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, s)| (m.clone(), s.clone())).collect(),
        }
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &ExactScalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.ctx);
        }
        self.map_coefficients(|c| c * s)
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Element {
        self.scale(&ExactScalar::from_coeff(c.clone()))
    }

    pub fn map_coefficients(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Element {
        let mut out = Element::zero(&self.ctx);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), f(s));
        }
        out
    }

    pub fn check_ctx(&self, other: &Element) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        let mut out = Element::zero(&self.ctx);
        for (m1, s1) in &self.terms {
            for (m2, s2) in &other.terms {
                if let Some((sign, phase, m)) = m1.mul(m2, &self.ctx) {
                    let mut s = (s1 * s2).mul_phase(&phase);
                    if sign < 0 {
                        s = -s;
                    }
                    out.add_term(m, s);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(m.clone(), s.clone());
        }
        Ok(out)
    }

    pub(crate) fn mul_monomial(&self, m2: &Monomial) -> Element {
        let mut out = Element::zero(&self.ctx);
        for (m1, s1) in &self.terms {
            if let Some((sign, phase, m)) = m1.mul(m2, &self.ctx) {
                let s = s1.mul_phase(&phase);
                out.add_term(m, if sign < 0 { -s } else { s });
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Element {
        let dim = self.dim();
        let mut out = Element::zero(&self.ctx);
        for (m, s) in &self.terms {
            for a in 1..=dim {
                let alpha = m.x_exponent(a);
                if alpha == 0 {
                    continue;
                }
                // x^{<a} (x^a)^{alpha-1} dx^a x^{>a} dx^S
                let mut left = vec![0; dim];
                left[..a - 1].copy_from_slice(&m.xexp()[..a - 1]);
                left[a - 1] = alpha - 1;
                let mut right = vec![0; dim];
                right[a..].copy_from_slice(&m.xexp()[a..]);
                let left = Monomial::from_parts(left, 0);
                let right = Monomial::from_parts(right, m.dx_mask());
                let Some((s1, p1, lm)) = left.mul(&Monomial::dx_generator(dim, a), &self.ctx) else {
                    continue;
                };
                let Some((s2, p2, full)) = lm.mul(&right, &self.ctx) else { continue };
                let mut c = s.mul_phase(&p1.mul(&p2)).scale(&Coeff::int(alpha as i64));
                if s1 * s2 < 0 {
                    c = -c;
                }
                out.add_term(full, c);
            }
        }
        out
    }

    /// The star structure: antilinear, `x^a -> x^a'`, `dx^a -> dx^a'`, and
    /// `(w w')^* = (-1)^{|w||w'|} w'^* w^*`.
    pub fn star(&self) -> Element {
        let dim = self.dim();
        let mut out = Element::zero(&self.ctx);
        for (m, s) in &self.terms {
            let k = m.form_degree();
            let mut dxs = 0u32;
            for a in m.dxset() {
                dxs |= 1 << (self.ctx.primed(a) - 1);
            }
            let rev: Vec<u32> = m.xexp().iter().rev().copied().collect();
            let left = Monomial::from_parts(vec![0; dim], dxs);
            let right = Monomial::from_parts(rev, 0);
            let (sign, phase, full) = left.mul(&right, &self.ctx).expect("disjoint differentials");
            let mut c = s.conj().mul_phase(&phase);
            if (sign < 0) != ((k * k.saturating_sub(1) / 2) % 2 == 1) {
                c = -c;
            }
            out.add_term(full, c);
        }
        out
    }

    /// The degree-`k` part multiplied by `(-1)^k`.
    pub fn grade_involution(&self) -> Element {
        let mut out = Element::zero(&self.ctx);
        for (m, s) in &self.terms {
            let c = if m.form_degree() % 2 == 1 { -s } else { s.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Substitutes `q -> q^-1` in every coefficient.
    pub fn invert_phases(&self) -> Element {
        self.map_coefficients(ExactScalar::invert_phases)
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on context mismatch; see [`Element::checked_add`].
    fn add(self, o: &Element) -> Element {
        self.checked_add(o).expect("context mismatch")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self.checked_add(&-o).expect("context mismatch")
    }
}

impl Mul for &Element {
    type Output = Element;
    /// Panics on context mismatch; see [`Element::checked_mul`].
    fn mul(self, o: &Element) -> Element {
        self.checked_mul(o).expect("context mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_coefficients(|s| -s)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    /// `+`-joined flat terms such as `-1/2*q(1,2)^-1*x1*dx2`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.ctx.params();
        let mut parts = Vec::new();
        for (m, s) in &self.terms {
            for t in s.flat_terms(params) {
                if m.is_one() {
                    parts.push(t);
                } else if t == "1" {
                    parts.push(m.to_string());
                } else {
                    parts.push(format!("{t}*{m}"));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
