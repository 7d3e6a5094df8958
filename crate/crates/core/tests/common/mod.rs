//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use twistcalc::ncalg::{Ctx, Element};
use twistcalc::qphase::{DeformationContext, ExactScalar};
use twistcalc::tensor::{epsilon_q, epsilon_qinv, lambda, w_row, Row};

pub fn ctx(d: usize) -> Ctx {
    Arc::new(DeformationContext::new(d).unwrap())
}

pub fn tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|_| 1..=d).multi_cartesian_product().collect()
}

pub fn tuples_k(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        vec![vec![]]
    } else {
        tuples(d, k)
    }
}

/// Row action of `Lambda_{j,j+1}`: the tuple with slots j, j+1 swapped,
/// weighted by `q` of the original pair.
pub fn apply_lambda(ctx: &DeformationContext, row: &Row, j: usize) -> Row {
    let mut out = Row::new();
    for (t, v) in row {
        let mut s = t.clone();
        s.swap(j, j + 1);
        let val = v * &lambda(ctx, t[j], t[j + 1], s[j], s[j + 1]);
        let e = out.entry(s).or_default();
        *e += &val;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Bubble-sort word of adjacent transpositions realising `perm`, plus its sign.
pub fn reduced_word(perm: &[usize]) -> (Vec<usize>, i64) {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() - 1 - i {
            if p[j] > p[j + 1] {
                p.swap(j, j + 1);
                word.push(j);
            }
        }
    }
    word.reverse();
    let sign = if word.len() % 2 == 0 { 1 } else { -1 };
    (word, sign)
}

/// `W^I = sum_sigma sgn(sigma) Lambda_sigma`, applied to row `I`.
pub fn brute_w_row(ctx: &DeformationContext, upper: &[usize]) -> Row {
    let k = upper.len();
    let mut total = Row::new();
    for perm in (0..k).permutations(k) {
        let (word, sign) = reduced_word(&perm);
        let mut row = Row::new();
        row.insert(upper.to_vec(), ExactScalar::int(sign));
        for &j in &word {
            row = apply_lambda(ctx, &row, j);
        }
        for (t, v) in row {
            let e = total.entry(t).or_default();
            *e += &v;
        }
    }
    total.retain(|_, v| !v.is_zero());
    total
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

pub fn contraction(c: &DeformationContext, i: &[usize], j: &[usize], cyclic: bool) -> ExactScalar {
    let d = c.dim();
    let mut acc = ExactScalar::zero();
    for l in tuples_k(d, d - i.len()) {
        let (a, b) = if cyclic {
            ([l.clone(), i.to_vec()].concat(), [l.clone(), j.to_vec()].concat())
        } else {
            ([i.to_vec(), l.clone()].concat(), [j.to_vec(), l.clone()].concat())
        };
        acc += &(&epsilon_q(c, &a).unwrap() * &epsilon_qinv(c, &b).unwrap());
    }
    acc
}

pub struct WCache<'a> {
    pub ctx: &'a DeformationContext,
    pub rows: HashMap<Vec<usize>, Row>,
}

impl WCache<'_> {
    pub fn get(&mut self, upper: &[usize], lower: &[usize]) -> ExactScalar {
        let ctx = self.ctx;
        let row = self.rows.entry(upper.to_vec()).or_insert_with(|| w_row(ctx, upper).unwrap());
        row.get(lower).cloned().unwrap_or_default()
    }
}

pub fn basis(c: &Ctx, k: usize) -> Vec<Element> {
    (1..=c.dim()).combinations(k).map(|s| Element::dx_word(c, &s).unwrap()).collect()
}

pub fn sign(n: usize) -> ExactScalar {
    ExactScalar::int(if n.is_multiple_of(2) { 1 } else { -1 })
}
