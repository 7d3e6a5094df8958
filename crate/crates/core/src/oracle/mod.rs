//! Numeric cross-checks: the classical sphere tensored with finite-dimensional
//! noncommutative-torus representations at roots of unity.

mod classical;
mod concordance;
mod model;
mod torus;

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::SQRT_2;

use crate::error::Result;
use crate::ncalg::{Ctx, Element};

pub use classical::{classical_hodge_basis, classical_pairing, sphere_moment};
pub use concordance::{commutative_limit, concordance, monopole_check, numeric_charge, ConcordanceCase};
pub use model::{ModelForm, PointForm};
pub use torus::{default_moduli, Label, TorusRep, WeylOp};

/// Where an identity is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    /// Pointwise on the ambient plane.
    Plane,
    /// As sphere classes: `dc ^ f` must vanish at points of the unit sphere.
    Sphere,
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub moduli: Option<Vec<u32>>,
    pub seed: u64,
    pub points: usize,
    pub roots: u32,
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { moduli: None, seed: 42, points: 20, roots: 2, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub max_magnitude: f64,
    pub evaluations: usize,
    pub passed: bool,
}

impl CheckOutcome {
    fn merge(self, o: CheckOutcome) -> CheckOutcome {
        CheckOutcome {
            max_magnitude: self.max_magnitude.max(o.max_magnitude),
            evaluations: self.evaluations + o.evaluations,
            passed: self.passed && o.passed,
        }
    }
}

/// A set of torus models for one deformation context, with seeded sample points.
#[derive(Debug, Clone)]
pub struct Oracle {
    ctx: Ctx,
    config: OracleConfig,
    models: Vec<TorusRep>,
}

/// Complex coordinates of a real point: `x^a = (y_a + i y_a')/sqrt2` for `a < a'`.
pub fn complex_coordinates(y: &[f64]) -> Vec<Complex64> {
    let d = y.len();
    let mut x = vec![Complex64::new(0.0, 0.0); d];
    for a in 0..d / 2 {
        let (u, v) = (y[a], y[d - 1 - a]);
        x[a] = Complex64::new(u, v) / SQRT_2;
        x[d - 1 - a] = Complex64::new(u, -v) / SQRT_2;
    }
    if d % 2 == 1 {
        x[d / 2] = Complex64::new(y[d / 2], 0.0);
    }
    x
}

impl Oracle {
    pub fn new(ctx: &Ctx, config: OracleConfig) -> Result<Self> {
        let models = (0..config.roots.max(1))
            .map(|k| TorusRep::with_choice(ctx, config.moduli.as_deref(), k))
            .collect::<Result<_>>()?;
        Ok(Oracle { ctx: ctx.clone(), config, models })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn models(&self) -> &[TorusRep] {
        &self.models
    }

    /// Seeded sample points, on the unit sphere for [`Locus::Sphere`].
    pub fn sample_points(&self, locus: Locus) -> Vec<Vec<Complex64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let d = self.ctx.dim();
        (0..self.config.points.max(1))
            .map(|_| {
                let mut y: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
                if locus == Locus::Sphere {
                    let r = y.iter().map(|t| t * t).sum::<f64>().sqrt();
                    y.iter_mut().for_each(|t| *t /= r);
                }
                complex_coordinates(&y)
            })
            .collect()
    }

    /// Evaluates `build(model)` at every sample point of every model.
    pub fn check_with(&self, locus: Locus, build: impl Fn(&TorusRep) -> Result<ModelForm>) -> Result<CheckOutcome> {
        let points = self.sample_points(locus);
        let mut worst: f64 = 0.0;
        let mut n = 0;
        for t in &self.models {
            let mut f = build(t)?;
            if locus == Locus::Sphere {
                let dc = t.embed(&Element::dc(&self.ctx))?;
                f = t.mul_forms(&dc, &f);
            }
            for p in &points {
                worst = worst.max(t.point_max(&f.at_point(p)));
                n += 1;
            }
        }
        Ok(CheckOutcome { max_magnitude: worst, evaluations: n, passed: worst < self.config.tol })
    }

    /// True iff the element vanishes in every model at every sample point.
    pub fn check_identity(&self, f: &Element, locus: Locus) -> Result<CheckOutcome> {
        self.check_with(locus, |t| t.embed(f))
    }

    /// A scalar identity evaluated once per model.
    pub fn check_scalar(&self, value: impl Fn(&TorusRep) -> Result<Complex64>) -> Result<CheckOutcome> {
        let mut out = CheckOutcome { max_magnitude: 0.0, evaluations: 0, passed: true };
        for t in &self.models {
            let v = value(t)?.norm();
            out = out.merge(CheckOutcome { max_magnitude: v, evaluations: 1, passed: v < self.config.tol });
        }
        Ok(out)
    }
}
