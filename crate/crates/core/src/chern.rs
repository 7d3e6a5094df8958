//! q-Clifford generators, the instanton projector on the even sphere, its
//! curvature, the character of the sphere cycle and the charge pairing.

use std::sync::Arc;

use num::BigInt;

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element};
use crate::qphase::{Coeff, DeformationContext, ExactScalar, Rational};
use crate::sphere::{sphere_dim, SphereForm};
use crate::tensor::{epsilon_qinv, factorial};

/// Square matrix over exact scalars, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    size: usize,
    entries: Vec<ExactScalar>,
}

impl ScalarMatrix {
    pub fn zero(size: usize) -> Self {
        ScalarMatrix { size, entries: vec![ExactScalar::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = ScalarMatrix::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = ExactScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "square matrix expected");
        ScalarMatrix { size, entries: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.size + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    pub fn mul(&self, o: &ScalarMatrix) -> ScalarMatrix {
        let n = self.size;
        let mut out = ScalarMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &ScalarMatrix) -> ScalarMatrix {
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        ScalarMatrix { size: self.size, entries }
    }

    pub fn scale(&self, s: &ExactScalar) -> ScalarMatrix {
        ScalarMatrix { size: self.size, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    /// Conjugate transpose; phases are unimodular so conjugation inverts them.
    pub fn adjoint(&self) -> ScalarMatrix {
        let n = self.size;
        let mut out = ScalarMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn kron(&self, o: &ScalarMatrix) -> ScalarMatrix {
        let (n, m) = (self.size, o.size);
        let mut out = ScalarMatrix::zero(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.entries[(i * m + k) * n * m + j * m + l] = a * o.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> ExactScalar {
        let mut t = ExactScalar::zero();
        for i in 0..self.size {
            t += self.get(i, i);
        }
        t
    }
}

/// The irreducible representation of the q-Clifford algebra on `(C^2)^{(x)n}`.
#[derive(Debug, Clone)]
pub struct GammaRep {
    ctx: Ctx,
    n: usize,
    gammas: Vec<ScalarMatrix>,
}

impl GammaRep {
    /// Builds the generators for an odd ambient dimension `D = 2n + 1`.
    pub fn new(ctx: &Ctx) -> Result<Self> {
        let d = ctx.dim();
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(d));
        }
        let n = d / 2;
        let s = |v: i64| ExactScalar::int(v);
        let id2 = ScalarMatrix::identity(2);
        let lower = ScalarMatrix::from_rows(vec![vec![s(0), s(0)], vec![s(1), s(0)]]);
        let chiral = ScalarMatrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(-1)]]);
        let mut gammas = vec![ScalarMatrix::zero(1 << n); d];
        for i in 1..=n {
            let mut m = ScalarMatrix::identity(1);
            for j in 1..i {
                let q = ExactScalar::phase(ctx.reduce_pair(i, j)?);
                let diag = ScalarMatrix::from_rows(vec![vec![-q, s(0)], vec![s(0), s(1)]]);
                m = m.kron(&diag);
            }
            m = m.kron(&lower);
            for _ in i..n {
                m = m.kron(&id2);
            }
            let m = m.scale(&ExactScalar::sqrt2());
            gammas[ctx.primed(i) - 1] = m.adjoint();
            gammas[i - 1] = m;
        }
        let mut chi = ScalarMatrix::identity(1);
        for _ in 0..n {
            chi = chi.kron(&chiral);
        }
        gammas[n] = chi;
        Ok(GammaRep { ctx: ctx.clone(), n, gammas })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn gamma(&self, i: usize) -> Result<&ScalarMatrix> {
        self.ctx.check_index(i)?;
        Ok(&self.gammas[i - 1])
    }

    /// `g^i g^j + q_ji g^j g^i - 2 g^{ij}`, which vanishes in a valid representation.
    pub fn relation_defect(&self, i: usize, j: usize) -> Result<ScalarMatrix> {
        let (gi, gj) = (self.gamma(i)?, self.gamma(j)?);
        let q = ExactScalar::phase(self.ctx.reduce_pair(j, i)?);
        let mut m = gi.mul(gj).add(&gj.mul(gi).scale(&q));
        if j == self.ctx.primed(i) {
            m = m.add(&ScalarMatrix::identity(self.size()).scale(&ExactScalar::int(-2)));
        }
        Ok(m)
    }
}

/// `gamma_rep(n)` in the default deformation context of dimension `2n + 1`.
pub fn gamma_rep(n: usize) -> Result<GammaRep> {
    GammaRep::new(&default_ctx(n)?)
}

fn default_ctx(n: usize) -> Result<Ctx> {
    Ok(Arc::new(DeformationContext::new(2 * n + 1)?))
}

/// Trace of `g^{i_0} ... g^{i_{2n}}`.
pub fn clifford_trace(rep: &GammaRep, indices: &[usize]) -> Result<ExactScalar> {
    let want = 2 * rep.n + 1;
    if indices.len() != want {
        return Err(Error::Arity { expected: want, got: indices.len() });
    }
    let mut m = ScalarMatrix::identity(rep.size());
    for &i in indices {
        m = m.mul(rep.gamma(i)?);
    }
    Ok(m.trace())
}

/// The value `2^n eps_{q^-1}` predicted for [`clifford_trace`].
pub fn clifford_trace_formula(rep: &GammaRep, indices: &[usize]) -> Result<ExactScalar> {
    let e = epsilon_qinv(&rep.ctx, indices)?;
    Ok(e.scale_rational(&Rational::from_integer(BigInt::from(rep.size()))))
}

/// Square matrix of sphere forms.
#[derive(Debug, Clone)]
pub struct FormMatrix {
    ctx: Ctx,
    size: usize,
    entries: Vec<SphereForm>,
}

impl FormMatrix {
    pub fn from_fn(ctx: &Ctx, size: usize, mut f: impl FnMut(usize, usize) -> Element) -> Result<Self> {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(SphereForm::new(f(r, c))?);
            }
        }
        Ok(FormMatrix { ctx: ctx.clone(), size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &SphereForm {
        &self.entries[r * self.size + c]
    }

    fn map(&self, f: impl Fn(&SphereForm) -> SphereForm) -> FormMatrix {
        FormMatrix { ctx: self.ctx.clone(), size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &FormMatrix) -> FormMatrix {
        let n = self.size;
        let zero = Element::zero(&self.ctx);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let (a, b) = (self.get(i, k).rep(), o.get(k, j).rep());
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(SphereForm::new(acc).expect("context checked at construction"));
            }
        }
        FormMatrix { ctx: self.ctx.clone(), size: n, entries }
    }

    pub fn sub(&self, o: &FormMatrix) -> FormMatrix {
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect();
        FormMatrix { ctx: self.ctx.clone(), size: self.size, entries }
    }

    /// Entrywise exterior derivative.
    pub fn d(&self) -> FormMatrix {
        self.map(SphereForm::d)
    }

    /// Entries with functions reduced modulo `c - 1`.
    pub fn reduced(&self) -> FormMatrix {
        self.map(SphereForm::reduced)
    }

    /// `(M^*)_{ab} = (M_{ba})^*`.
    pub fn star(&self) -> FormMatrix {
        let n = self.size;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).star()).collect();
        FormMatrix { ctx: self.ctx.clone(), size: n, entries }
    }

    pub fn scale(&self, s: &ExactScalar) -> FormMatrix {
        self.map(|a| a.scale(s))
    }

    pub fn trace(&self) -> SphereForm {
        let mut acc = Element::zero(&self.ctx);
        for i in 0..self.size {
            acc = &acc + self.get(i, i).rep();
        }
        SphereForm::new(acc).expect("context checked at construction")
    }

    /// Entrywise equality of sphere classes.
    pub fn equals(&self, o: &FormMatrix) -> Result<bool> {
        for (a, b) in self.entries.iter().zip(&o.entries) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(self.size == o.size)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SphereForm::is_zero)
    }
}

/// `e = (1 + g^i x^j g_ij) / 2`.
pub fn projector_for(rep: &GammaRep) -> Result<FormMatrix> {
    let ctx = rep.ctx();
    let half = ExactScalar::rational(Rational::new(1.into(), 2.into()));
    let xs: Vec<Element> = (1..=ctx.dim()).map(|a| Element::x(ctx, ctx.primed(a))).collect::<Result<_>>()?;
    FormMatrix::from_fn(ctx, rep.size(), |r, c| {
        let mut acc = if r == c { Element::one(ctx) } else { Element::zero(ctx) };
        for (i, x) in xs.iter().enumerate() {
            let g = rep.gammas[i].get(r, c);
            if !g.is_zero() {
                acc = &acc + &x.scale(g);
            }
        }
        acc.scale(&half)
    })
}

/// The instanton projector on the sphere of dimension `2n`.
pub fn projector(n: usize) -> Result<FormMatrix> {
    projector_for(&gamma_rep(n)?)
}

/// `F = e de de`; errors unless `e^2 = e` on the sphere.
pub fn curvature(e: &FormMatrix) -> Result<FormMatrix> {
    if !e.mul(e).equals(e)? {
        return Err(Error::NotProjector);
    }
    let de = e.d();
    Ok(e.mul(&de).mul(&de))
}

/// `2^{[N/2]+1} [N/2]! / (i^{[N/2]} N!)`.
pub fn tau_normalization(big_n: usize) -> Coeff {
    let m = big_n / 2;
    let num = (1i64 << (m + 1)) * factorial(m);
    let r = Rational::new(num.into(), factorial(big_n).into());
    Coeff::i_pow(-(m as i64)).scale(&r)
}

/// The character of the sphere cycle evaluated on `N + 1` functions.
pub fn character_tau(args: &[SphereForm]) -> Result<ExactScalar> {
    let first = args.first().ok_or(Error::Arity { expected: 1, got: 0 })?;
    let ctx = first.ctx().clone();
    let big_n = sphere_dim(&ctx)?;
    if args.len() != big_n + 1 {
        return Err(Error::Arity { expected: big_n + 1, got: args.len() });
    }
    let mut acc = first.rep().clone();
    first.rep().expect_degree(0)?;
    for a in &args[1..] {
        a.rep().expect_degree(0)?;
        acc = acc.checked_mul(&a.rep().d())?;
    }
    Ok(SphereForm::new(acc)?.integrate()?.scale(&tau_normalization(big_n)))
}

/// `e (de)^{2n}`, a matrix of top forms whose trace is the Chern integrand.
pub fn chern_top_form(e: &FormMatrix) -> FormMatrix {
    let de = e.d();
    let n2 = sphere_dim(e.ctx()).expect("projector lives on a sphere");
    let mut m = e.clone();
    for _ in 0..n2 {
        m = m.mul(&de);
    }
    m
}

/// `(1/n!) tau(Tr[e^{(x) 2n+1}])` for the projector built from `rep`.
pub fn charge_for(rep: &GammaRep) -> Result<ExactScalar> {
    let e = projector_for(rep)?;
    let top = chern_top_form(&e).trace().integrate()?;
    let n = rep.n();
    let r = Rational::new(1.into(), factorial(n).into());
    Ok(top.scale(&tau_normalization(2 * n)).scale_rational(&r))
}

/// The charge of the instanton projector on the sphere of dimension `2n`.
pub fn charge(n: usize) -> Result<ExactScalar> {
    charge_for(&gamma_rep(n)?)
}

/// The charge with every phase set to one.
pub fn charge_commutative(n: usize) -> Result<ExactScalar> {
    let ctx: Ctx = Arc::new(DeformationContext::commutative(2 * n + 1)?);
    charge_for(&GammaRep::new(&ctx)?)
}
