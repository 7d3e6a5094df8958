//! Noncommutative-torus representations at roots of unity, held in the
//! clock-and-shift (Weyl) basis so that no dense matrix is ever formed.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num::complex::Complex64;
use num::integer::gcd;

use crate::error::{Error, Result};
use crate::ncalg::Ctx;
use crate::qphase::ExactScalar;

/// Per parameter, the powers `(a, b)` of `C^a S^b`.
pub type Label = Vec<(u32, u32)>;

/// A finite sum `sum_w c_w W_w` of Weyl words.
#[derive(Debug, Clone, Default)]
pub struct WeylOp {
    terms: HashMap<Label, Complex64>,
}

impl WeylOp {
    pub fn zero() -> Self {
        WeylOp::default()
    }

    pub fn word(label: Label, c: Complex64) -> Self {
        let mut op = WeylOp::zero();
        op.add_word(label, c);
        op
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_word(&mut self, label: Label, c: Complex64) {
        *self.terms.entry(label).or_default() += c;
    }

    pub fn add_assign(&mut self, o: &WeylOp, s: Complex64) {
        for (l, c) in &o.terms {
            self.add_word(l.clone(), c * s);
        }
    }

    pub fn scale(&self, s: Complex64) -> WeylOp {
        WeylOp { terms: self.terms.iter().map(|(l, c)| (l.clone(), c * s)).collect() }
    }

    /// Sum of coefficient magnitudes, an upper bound on every matrix entry.
    pub fn l1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }
}

/// Tensor products of clock and shift matrices realising the phase relations.
#[derive(Debug, Clone)]
pub struct TorusRep {
    ctx: Ctx,
    moduli: Vec<u32>,
    exps: Vec<u32>,
    zetas: Vec<Complex64>,
    gens: Vec<Label>,
}

const DEFAULT_PRIMES: [u32; 10] = [13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// The first `count` primes from 13 on.
pub fn default_moduli(count: usize) -> Vec<u32> {
    DEFAULT_PRIMES.iter().copied().cycle().take(count).collect()
}

impl TorusRep {
    /// `moduli[p]` and root exponent `exps[p]` give `zeta_p = exp(2 pi i exps[p] / moduli[p])`.
    pub fn new(ctx: &Ctx, moduli: &[u32], exps: &[u32]) -> Result<Self> {
        let np = ctx.num_params();
        if moduli.len() != np || exps.len() != np {
            return Err(Error::InvalidModel(format!("expected {np} moduli, got {}", moduli.len())));
        }
        for (&m, &k) in moduli.iter().zip(exps) {
            if m < 2 || gcd(m, k % m) != 1 {
                return Err(Error::InvalidModel(format!("exp(2 pi i {k}/{m}) is not a primitive root")));
            }
        }
        let zetas =
            moduli.iter().zip(exps).map(|(&m, &k)| Complex64::from_polar(1.0, TAU * k as f64 / m as f64)).collect();
        let d = ctx.dim();
        let mut gens = vec![vec![(0, 0); np]; d];
        for (p, &(r, s)) in ctx.params().iter().enumerate() {
            let m = moduli[p];
            gens[r - 1][p].0 = 1;
            gens[s - 1][p].1 = 1;
            gens[ctx.primed(r) - 1][p].0 = m - 1;
            gens[ctx.primed(s) - 1][p].1 = m - 1;
        }
        Ok(TorusRep { ctx: ctx.clone(), moduli: moduli.to_vec(), exps: exps.to_vec(), zetas, gens })
    }

    /// Default moduli with root choice `choice` (exponent `choice + 1`).
    /// Given moduli beyond the parameter count are ignored; missing ones are
    /// filled with default primes not already in use.
    pub fn with_choice(ctx: &Ctx, moduli: Option<&[u32]>, choice: u32) -> Result<Self> {
        let np = ctx.num_params();
        let mut moduli: Vec<u32> = moduli.unwrap_or(&[]).iter().copied().take(np).collect();
        let spare: Vec<u32> = DEFAULT_PRIMES.iter().copied().filter(|m| !moduli.contains(m)).collect();
        moduli.extend(spare.into_iter().cycle().take(np - moduli.len()));
        let exps: Vec<u32> = moduli.iter().map(|&m| next_coprime(m, choice + 1)).collect();
        TorusRep::new(ctx, &moduli, &exps)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn root_exponents(&self) -> &[u32] {
        &self.exps
    }

    /// The values substituted for the deformation parameters.
    pub fn param_values(&self) -> &[Complex64] {
        &self.zetas
    }

    pub fn eval_scalar(&self, s: &ExactScalar) -> Complex64 {
        s.eval_with(&self.zetas)
    }

    pub fn identity(&self) -> WeylOp {
        WeylOp::word(vec![(0, 0); self.moduli.len()], Complex64::new(1.0, 0.0))
    }

    /// `U^a`.
    pub fn generator(&self, a: usize) -> WeylOp {
        WeylOp::word(self.gens[a - 1].clone(), Complex64::new(1.0, 0.0))
    }

    fn mul_labels(&self, l: &Label, r: &Label) -> (Complex64, Label) {
        let mut phase = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(l.len());
        for (p, (&(a, b), &(c, d))) in l.iter().zip(r).enumerate() {
            let m = self.moduli[p];
            // S^b C^c = zeta^{-bc} C^c S^b
            let e = (b as u64 * c as u64) % m as u64;
            if e != 0 {
                phase *= self.zetas[p].powi(-(e as i32));
            }
            out.push(((a + c) % m, (b + d) % m));
        }
        (phase, out)
    }

    pub fn mul(&self, x: &WeylOp, y: &WeylOp) -> WeylOp {
        let mut out = WeylOp::zero();
        for (l, c) in &x.terms {
            for (r, d) in &y.terms {
                let (p, lab) = self.mul_labels(l, r);
                out.add_word(lab, c * d * p);
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self, x: &WeylOp) -> WeylOp {
        let mut out = WeylOp::zero();
        for (l, c) in &x.terms {
            // (C^a S^b)^dagger = S^-b C^-a = zeta^{-ab} C^-a S^-b
            let mut phase = Complex64::new(1.0, 0.0);
            let mut lab = Vec::with_capacity(l.len());
            for (p, &(a, b)) in l.iter().enumerate() {
                let m = self.moduli[p];
                let e = (a as u64 * b as u64) % m as u64;
                if e != 0 {
                    phase *= self.zetas[p].powi(-(e as i32));
                }
                lab.push(((m - a) % m, (m - b) % m));
            }
            out.add_word(lab, c.conj() * phase);
        }
        out
    }

    /// The normalised trace: the coefficient of the identity word.
    pub fn tau(&self, x: &WeylOp) -> Complex64 {
        x.terms.iter().filter(|(l, _)| l.iter().all(|&(a, b)| a == 0 && b == 0)).map(|(_, c)| *c).sum()
    }

    /// `z` with `U^a U^b = z U^b U^a`, read off the representation.
    pub fn commutation(&self, a: usize, b: usize) -> Complex64 {
        let ab = self.mul(&self.generator(a), &self.generator(b));
        let ba = self.mul(&self.generator(b), &self.generator(a));
        let (l, c) = ab.terms.iter().next().expect("generators are words");
        c / ba.terms[l]
    }

    /// `z` with `A = z B` for two operators proportional to the same word.
    pub fn ratio(&self, a: &WeylOp, b: &WeylOp) -> Option<Complex64> {
        let (l, c) = a.terms.iter().find(|(_, c)| c.norm() > 1e-300)?;
        let d = b.terms.get(l)?;
        Some(c / d)
    }

    /// Largest matrix-entry magnitude of the operator on `(x)_p C^{m_p}`.
    pub fn max_entry(&self, x: &WeylOp) -> f64 {
        if x.l1() < 1e-12 {
            return x.l1();
        }
        let mut groups: HashMap<Vec<u32>, Vec<(&Label, Complex64)>> = HashMap::new();
        for (l, c) in &x.terms {
            if c.norm() > 0.0 {
                groups.entry(l.iter().map(|&(_, b)| b).collect()).or_default().push((l, *c));
            }
        }
        let total: usize = self.moduli.iter().map(|&m| m as usize).product();
        let mut best: f64 = 0.0;
        let mut idx = vec![0u32; self.moduli.len()];
        for (shift, words) in groups {
            for _ in 0..total {
                // entry (j + b, j) of C^a S^b is zeta^{a (j + b)}
                let mut acc = Complex64::new(0.0, 0.0);
                for (l, c) in &words {
                    let mut v = *c;
                    for (p, &(a, _)) in l.iter().enumerate() {
                        let m = self.moduli[p] as u64;
                        let e = (a as u64 * ((idx[p] + shift[p]) as u64 % m)) % m;
                        if e != 0 {
                            v *= self.zetas[p].powi(e as i32);
                        }
                    }
                    acc += v;
                }
                best = best.max(acc.norm());
                for (p, i) in idx.iter_mut().enumerate() {
                    *i += 1;
                    if *i < self.moduli[p] {
                        break;
                    }
                    *i = 0;
                }
            }
        }
        best
    }
}

fn next_coprime(m: u32, start: u32) -> u32 {
    (start..start + m).find(|&k| gcd(m, k % m) == 1).unwrap_or(1) % m
}
