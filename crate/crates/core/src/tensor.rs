//! Metric, braid matrix, q-epsilon tensors, antisymmetrizer, pairing and the
//! Hodge star on the plane.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element, Monomial};
use crate::qphase::{rat, Coeff, DeformationContext, ExactScalar, PhaseMonomial};

/// A row of a tensor operator: lower index tuple to entry.
pub type Row = BTreeMap<Vec<usize>, ExactScalar>;

/// `g_ab = g^ab = 1` if `b = a'`, else 0.
pub fn metric(ctx: &DeformationContext, a: usize, b: usize) -> i64 {
    i64::from(b == ctx.primed(a))
}

/// `Lambda^{ab}_{cd} = q_ab delta^a_d delta^b_c`.
pub fn lambda(ctx: &DeformationContext, a: usize, b: usize, c: usize, d: usize) -> ExactScalar {
    if a == d && b == c {
        ExactScalar::phase(ctx.q(a, b).clone())
    } else {
        ExactScalar::zero()
    }
}

/// `dx^{i1} ... dx^{ik} = sign * phase * dx^{sorted}`, or `None` if an index repeats.
pub(crate) fn dx_word_factor(ctx: &DeformationContext, indices: &[usize]) -> Option<(i32, PhaseMonomial)> {
    let d = ctx.dim();
    let mut acc = Monomial::one(d);
    let mut sign = 1;
    let mut phase = PhaseMonomial::one();
    for &a in indices {
        let (s, p, m) = acc.mul(&Monomial::dx_generator(d, a), ctx)?;
        sign *= s;
        phase = phase.mul(&p);
        acc = m;
    }
    Some((sign, phase))
}

fn signed_phase(sign: i32, phase: PhaseMonomial) -> ExactScalar {
    ExactScalar::term(Coeff::int(sign as i64), phase)
}

fn check_indices(ctx: &DeformationContext, indices: &[usize]) -> Result<()> {
    indices.iter().try_for_each(|&a| ctx.check_index(a))
}

/// `eps_q^{i1...iD}`: the factor in `dx^{i1} ... dx^{iD} = eps_q dx^1 ... dx^D`.
pub fn epsilon_q(ctx: &DeformationContext, indices: &[usize]) -> Result<ExactScalar> {
    if indices.len() != ctx.dim() {
        return Err(Error::Arity { expected: ctx.dim(), got: indices.len() });
    }
    check_indices(ctx, indices)?;
    Ok(match dx_word_factor(ctx, indices) {
        Some((s, p)) => signed_phase(s, p),
        None => ExactScalar::zero(),
    })
}

/// `eps_{q^-1}`: `epsilon_q` with every phase inverted.
pub fn epsilon_qinv(ctx: &DeformationContext, indices: &[usize]) -> Result<ExactScalar> {
    Ok(epsilon_q(ctx, indices)?.invert_phases())
}

/// Row `I` of the operator `I_{1..k} = 1 - I_{1..k-1} Lambda_{k-1,k}`.
fn i_row(ctx: &DeformationContext, upper: &[usize], memo: &mut HashMap<Vec<usize>, Row>) -> Row {
    if let Some(r) = memo.get(upper) {
        return r.clone();
    }
    let k = upper.len();
    let mut row = Row::new();
    row.insert(upper.to_vec(), ExactScalar::one());
    if k >= 2 {
        let ik = upper[k - 1];
        let prev = i_row(ctx, &upper[..k - 1], memo);
        for (p, v) in prev {
            let pk1 = p[k - 2];
            let mut m = p[..k - 2].to_vec();
            m.push(ik);
            m.push(pk1);
            let val = v.mul_phase(ctx.q(pk1, ik));
            let e = row.entry(m).or_default();
            *e -= &val;
        }
        row.retain(|_, v| !v.is_zero());
    }
    memo.insert(upper.to_vec(), row.clone());
    row
}

/// Row `I` of `W_{1..k} = I_{1..k} W_{1..k-1}`.
fn w_row_memo(
    ctx: &DeformationContext,
    upper: &[usize],
    imemo: &mut HashMap<Vec<usize>, Row>,
    wmemo: &mut HashMap<Vec<usize>, Row>,
) -> Row {
    if let Some(r) = wmemo.get(upper) {
        return r.clone();
    }
    let k = upper.len();
    let mut row = Row::new();
    if k <= 1 {
        row.insert(upper.to_vec(), ExactScalar::one());
    } else {
        for (m, v) in i_row(ctx, upper, imemo) {
            let mk = m[k - 1];
            for (mut j, w) in w_row_memo(ctx, &m[..k - 1], imemo, wmemo) {
                j.push(mk);
                let e = row.entry(j).or_default();
                *e += &(&v * &w);
            }
        }
        row.retain(|_, v| !v.is_zero());
    }
    wmemo.insert(upper.to_vec(), row.clone());
    row
}

/// All nonzero entries `W^{upper}_J` of the antisymmetrizer.
pub fn w_row(ctx: &DeformationContext, upper: &[usize]) -> Result<Row> {
    check_indices(ctx, upper)?;
    Ok(w_row_memo(ctx, upper, &mut HashMap::new(), &mut HashMap::new()))
}

/// The antisymmetrizer entry `W^{upper}_{lower}`.
pub fn antisym_w(ctx: &DeformationContext, upper: &[usize], lower: &[usize]) -> Result<ExactScalar> {
    if upper.len() != lower.len() {
        return Err(Error::Arity { expected: upper.len(), got: lower.len() });
    }
    check_indices(ctx, lower)?;
    Ok(w_row(ctx, upper)?.remove(lower).unwrap_or_default())
}

/// `<dx^{a1}...dx^{ak}, dx^{b1}...dx^{bk}> = (-1)^[k/2] W^{b1..bk}_{a_k'..a_1'}`.
pub fn pairing_basis(ctx: &DeformationContext, a: &[usize], b: &[usize]) -> Result<ExactScalar> {
    if a.len() != b.len() {
        return Err(Error::DegreeMismatch { expected: a.len(), got: b.len() });
    }
    let k = a.len();
    let lower: Vec<usize> = a.iter().rev().map(|&x| ctx.primed(x)).collect();
    let w = antisym_w(ctx, b, &lower)?;
    Ok(if (k / 2) % 2 == 1 { -w } else { w })
}

/// The bimodule pairing of two homogeneous forms of equal degree.
pub fn pairing_plane(alpha: &Element, beta: &Element) -> Result<Element> {
    alpha.check_ctx(beta)?;
    let ctx = alpha.ctx();
    let (ka, kb) = (alpha.form_degree()?, beta.form_degree()?);
    if let (Some(x), Some(y)) = (ka, kb) {
        if x != y {
            return Err(Error::DegreeMismatch { expected: x, got: y });
        }
    }
    let d = ctx.dim();
    let mut out = Element::zero(ctx);
    for (mb, gb) in beta.terms() {
        // g x^b dx^B = dx^B (phase^-1 g x^b)
        let (sign, phase, _) = mb.dx_part().mul(&mb.x_part(), ctx).expect("no differentials in x part");
        debug_assert_eq!(sign, 1);
        let right = Element::term(ctx, mb.x_part(), gb.mul_phase(&phase.inv()));
        let bset = mb.dxset();
        for (ma, fa) in alpha.terms() {
            let p = pairing_basis(ctx, &ma.dxset(), &bset)?;
            if p.is_zero() {
                continue;
            }
            let left = Element::term(ctx, ma.x_part(), fa * &p);
            out = &out + &(&left * &right);
        }
    }
    debug_assert!(out.terms().all(|(m, _)| m.form_degree() == 0 && m.dim() == d));
    Ok(out)
}

/// `C_{N,k} = (-i)^[N/2] (-1)^[(N-k)/2] / (N-k)!`.
pub fn hodge_constant(n: usize, k: usize) -> Coeff {
    let sign = Coeff::i_pow(-((n / 2) as i64));
    let sign = if ((n - k) / 2) % 2 == 1 { -sign } else { sign };
    sign.scale(&rat(1, factorial(n - k)))
}

pub(crate) fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Hodge dual of the basis form `dx^{i1} ... dx^{ik}` (indices in any order).
pub fn hodge_basis(ctx: &Ctx, indices: &[usize]) -> Result<Element> {
    check_indices(ctx, indices)?;
    let n = ctx.dim();
    let k = indices.len();
    if k > n {
        return Ok(Element::zero(ctx));
    }
    let complement: Vec<usize> = (1..=n).filter(|a| !indices.contains(a)).collect();
    if complement.len() != n - k {
        return Ok(Element::zero(ctx));
    }
    let mut out = Element::zero(ctx);
    for ls in complement.iter().copied().permutations(n - k) {
        let mut full = indices.to_vec();
        full.extend_from_slice(&ls);
        let eps = epsilon_q(ctx, &full)?;
        let dual: Vec<usize> = ls.iter().rev().map(|&l| ctx.primed(l)).collect();
        out = &out + &Element::dx_word(ctx, &dual)?.scale(&eps);
    }
    Ok(out.scale_coeff(&hodge_constant(n, k)))
}

/// Hodge star on homogeneous forms, linear over left function coefficients.
pub fn hodge_plane(alpha: &Element) -> Result<Element> {
    let ctx = alpha.ctx();
    alpha.form_degree()?;
    let mut out = Element::zero(ctx);
    let mut cache: HashMap<Vec<usize>, Element> = HashMap::new();
    for (m, f) in alpha.terms() {
        let set = m.dxset();
        if !cache.contains_key(&set) {
            cache.insert(set.clone(), hodge_basis(ctx, &set)?);
        }
        let left = Element::term(ctx, m.x_part(), f.clone());
        out = &out + &(&left * &cache[&set]);
    }
    Ok(out)
}
