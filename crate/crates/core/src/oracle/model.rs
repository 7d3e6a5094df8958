//! Classical polynomial forms with torus-operator coefficients: the image of
//! the twisted calculus under `x^a -> x^a_cl (x) U^a`, `dx^a -> dx^a_cl (x) U^a`.

use std::collections::HashMap;

use num::complex::Complex64;

use super::classical::{classical_hodge_basis, sphere_moment};
use super::torus::{TorusRep, WeylOp};
use crate::error::{Error, Result};
use crate::ncalg::Element;

type Key = (Vec<u32>, u32);

/// `sum x_cl^alpha dx_cl^S (x) A_{alpha,S}` with commuting classical parts.
#[derive(Debug, Clone)]
pub struct ModelForm {
    dim: usize,
    terms: HashMap<Key, WeylOp>,
}

/// Form data at a point: coframe mask to operator.
pub type PointForm = HashMap<u32, WeylOp>;

fn wedge_sign(s: u32, t: u32) -> f64 {
    let mut n = 0;
    for b in 0..32 {
        if t >> b & 1 == 1 {
            n += (s >> (b + 1)).count_ones();
        }
    }
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn to_complex(c: &crate::qphase::Coeff) -> Complex64 {
    c.to_complex()
}

impl ModelForm {
    pub fn zero(dim: usize) -> Self {
        ModelForm { dim, terms: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &WeylOp)> {
        self.terms.iter()
    }

    fn add_op(&mut self, key: Key, op: &WeylOp, s: Complex64) {
        self.terms.entry(key).or_default().add_assign(op, s);
    }

    pub fn add(&self, o: &ModelForm) -> ModelForm {
        self.combine(o, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, o: &ModelForm) -> ModelForm {
        self.combine(o, Complex64::new(-1.0, 0.0))
    }

    fn combine(&self, o: &ModelForm, s: Complex64) -> ModelForm {
        let mut out = self.clone();
        for (k, op) in &o.terms {
            out.add_op(k.clone(), op, s);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ModelForm {
        let terms = self.terms.iter().map(|(k, op)| (k.clone(), op.scale(s))).collect();
        ModelForm { dim: self.dim, terms }
    }

    /// Classical exterior derivative, operator parts untouched.
    pub fn d(&self) -> ModelForm {
        let mut out = ModelForm::zero(self.dim);
        for ((alpha, mask), op) in &self.terms {
            for a in 0..self.dim {
                if alpha[a] == 0 || mask >> a & 1 == 1 {
                    continue;
                }
                let mut beta = alpha.clone();
                beta[a] -= 1;
                let s = wedge_sign(1 << a, *mask) * alpha[a] as f64;
                out.add_op((beta, mask | 1 << a), op, Complex64::new(s, 0.0));
            }
        }
        out
    }

    /// Evaluates the classical coefficients at complex coordinates `x`.
    pub fn at_point(&self, x: &[Complex64]) -> PointForm {
        let mut out = PointForm::new();
        for ((alpha, mask), op) in &self.terms {
            let mut v = Complex64::new(1.0, 0.0);
            for (xa, &e) in x.iter().zip(alpha) {
                v *= xa.powu(e);
            }
            out.entry(*mask).or_default().add_assign(op, v);
        }
        out
    }
}

impl TorusRep {
    /// The image of an engine element.
    pub fn embed(&self, f: &Element) -> Result<ModelForm> {
        if **f.ctx() != **self.ctx() {
            return Err(Error::ContextMismatch);
        }
        let d = self.ctx().dim();
        let gens: Vec<WeylOp> = (1..=d).map(|a| self.generator(a)).collect();
        let mut out = ModelForm::zero(d);
        for (m, s) in f.terms() {
            let mut op = self.identity();
            for (a, &e) in m.xexp().iter().enumerate() {
                for _ in 0..e {
                    op = self.mul(&op, &gens[a]);
                }
            }
            let mut mask = 0u32;
            for a in m.dxset() {
                op = self.mul(&op, &gens[a - 1]);
                mask |= 1 << (a - 1);
            }
            out.add_op((m.xexp().to_vec(), mask), &op, self.eval_scalar(s));
        }
        Ok(out)
    }

    pub fn mul_forms(&self, x: &ModelForm, y: &ModelForm) -> ModelForm {
        let mut out = ModelForm::zero(x.dim);
        for ((a1, m1), o1) in &x.terms {
            for ((a2, m2), o2) in &y.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let alpha: Vec<u32> = a1.iter().zip(a2).map(|(p, q)| p + q).collect();
                let op = self.mul(o1, o2);
                out.add_op((alpha, m1 | m2), &op, Complex64::new(wedge_sign(*m1, *m2), 0.0));
            }
        }
        out
    }

    /// `(x_cl^alpha (x) A)^* = conj(x_cl^alpha) (x) A^dagger` on functions.
    pub fn star_functions(&self, x: &ModelForm) -> Result<ModelForm> {
        let mut out = ModelForm::zero(x.dim);
        for ((alpha, mask), op) in &x.terms {
            if *mask != 0 {
                return Err(Error::DegreeMismatch { expected: 0, got: mask.count_ones() as usize });
            }
            let rev: Vec<u32> = alpha.iter().rev().copied().collect();
            out.add_op((rev, 0), &self.adjoint(op), Complex64::new(1.0, 0.0));
        }
        Ok(out)
    }

    /// Classical sphere average tensored with the normalised torus trace.
    pub fn haar(&self, x: &ModelForm) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((alpha, mask), op) in &x.terms {
            if *mask != 0 {
                return Err(Error::DegreeMismatch { expected: 0, got: mask.count_ones() as usize });
            }
            let t = self.tau(op);
            if t.norm() > 0.0 {
                acc += to_complex(&sphere_moment(alpha)) * t;
            }
        }
        Ok(acc)
    }

    /// Normalised integral of an `N`-form over the sphere, through Stokes on the unit ball.
    /// The sphere is oriented by `nu ^ dr = vol`, which differs from the outward
    /// convention `dr ^ nu = vol` by `(-1)^N`.
    pub fn integral(&self, x: &ModelForm) -> Result<Complex64> {
        let d = x.dim;
        let top = x.d();
        let vol = Complex64::i().powu((d / 2) as u32);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((alpha, mask), op) in &top.terms {
            if mask.count_ones() as usize != d {
                return Err(Error::DegreeMismatch { expected: d - 1, got: mask.count_ones() as usize - 1 });
            }
            let t = self.tau(op);
            if t.norm() > 0.0 {
                let deg: u32 = alpha.iter().sum();
                acc += to_complex(&sphere_moment(alpha)) * t / (deg as f64 + d as f64);
            }
        }
        let orient = if (d - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(acc / vol * orient)
    }

    /// Classical Hodge star on the coframe, identity on operators.
    pub fn hodge(&self, x: &ModelForm) -> ModelForm {
        let d = x.dim;
        let mut cache: HashMap<u32, Vec<(u32, Complex64)>> = HashMap::new();
        let mut out = ModelForm::zero(d);
        for ((alpha, mask), op) in &x.terms {
            let star = cache.entry(*mask).or_insert_with(|| {
                let j: Vec<usize> = (0..d).filter(|a| mask >> a & 1 == 1).map(|a| a + 1).collect();
                classical_hodge_basis(d, &j)
                    .into_iter()
                    .map(|(k, c)| (k.iter().fold(0, |m, a| m | 1 << (a - 1)), to_complex(&c)))
                    .collect()
            });
            for (k, c) in star.iter() {
                out.add_op((alpha.clone(), *k), op, *c);
            }
        }
        out
    }

    /// Sphere Hodge star of a `k`-form: `(-1)^{N-k} * (beta dc / 2)`.
    pub fn sphere_hodge(&self, x: &ModelForm, k: usize) -> Result<ModelForm> {
        let c = self.embed(&Element::c(self.ctx()))?;
        let n = x.dim - 1;
        let half_dc = c.d().scale(Complex64::new(0.5, 0.0));
        let s = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(self.hodge(&self.mul_forms(x, &half_dc)).scale(Complex64::new(s, 0.0)))
    }

    /// Largest matrix-entry magnitude over all coframe components.
    pub fn point_max(&self, p: &PointForm) -> f64 {
        p.values().map(|op| self.max_entry(op)).fold(0.0, f64::max)
    }
}
