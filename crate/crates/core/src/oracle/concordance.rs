//! Exports of the exact identities to the numeric model, and the classical checks.

use std::sync::Arc;

use itertools::Itertools;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classical::{classical_hodge_basis, permutation_sign, sphere_moment};
use super::{complex_coordinates, CheckOutcome, Locus, ModelForm, Oracle, OracleConfig, TorusRep};
use crate::chern::{charge_commutative, curvature, gamma_rep, projector_for, tau_normalization, GammaRep};
use crate::error::Result;
use crate::expr::parse_expr;
use crate::haar::Haar;
use crate::ncalg::{Ctx, Element, Monomial};
use crate::qphase::{rat, DeformationContext, ExactScalar};
use crate::random::RandomElements;
use crate::sphere::{hodge_sphere, integrate};
use crate::tensor::{epsilon_q, factorial, hodge_plane, lambda, w_row};

#[derive(Debug, Clone)]
pub struct ConcordanceCase {
    pub criterion: u8,
    pub name: String,
    pub outcome: CheckOutcome,
}

fn ctx(d: usize) -> Result<Ctx> {
    Ok(Arc::new(DeformationContext::new(d)?))
}

fn commutative_ctx(d: usize) -> Result<Ctx> {
    Ok(Arc::new(DeformationContext::commutative(d)?))
}

fn outcome(worst: f64, n: usize, tol: f64) -> CheckOutcome {
    CheckOutcome { max_magnitude: worst, evaluations: n, passed: worst < tol }
}

fn exact(ok: bool, n: usize) -> CheckOutcome {
    CheckOutcome { max_magnitude: if ok { 0.0 } else { 1.0 }, evaluations: n, passed: ok }
}

fn case(criterion: u8, name: impl Into<String>, outcome: CheckOutcome) -> ConcordanceCase {
    ConcordanceCase { criterion, name: name.into(), outcome }
}

fn monomials_up_to(d: usize, max_deg: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        for idx in (0..d).combinations_with_replacement(deg) {
            let mut x = vec![0; d];
            idx.into_iter().for_each(|i| x[i] += 1);
            out.push(Monomial::new(x, &[]));
        }
    }
    out
}

fn basis(c: &Ctx, k: usize) -> Vec<(Vec<usize>, Element)> {
    (1..=c.dim()).combinations(k).map(|s| (s.clone(), Element::dx_word(c, &s).expect("indices in range"))).collect()
}

fn haar_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for d in 3..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let mut h = Haar::new(&c);
        let (mut worst, mut n) = (0f64, 0);
        for t in o.models() {
            let mc = t.embed(&cm1)?;
            for m in monomials_up_to(d, 6) {
                let f = Element::monomial(&c, m);
                let model = t.haar(&t.mul_forms(&mc, &t.embed(&f)?))?;
                let engine = t.eval_scalar(&h.eval(&(&cm1 * &f))?);
                let direct = t.haar(&t.embed(&f)?)? - t.eval_scalar(&h.eval(&f)?);
                worst = worst.max(model.norm()).max(engine.norm()).max(direct.norm());
                n += 1;
            }
        }
        out.push(case(3, format!("h((c-1)f) = 0 and h agrees, D={d}"), outcome(worst, n, config.tol)));
    }
    for d in 2..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let mut g = RandomElements::new(&c, config.seed + d as u64);
        let mut h = Haar::new(&c);
        let pairs: Vec<(Element, Element)> = (0..100).map(|_| (g.function(2, 4), g.function(2, 4))).collect();
        let (mut worst, mut n) = (0f64, 0);
        for t in o.models() {
            for (f, k) in &pairs {
                let (mf, mk) = (t.embed(f)?, t.embed(k)?);
                let fk = t.haar(&t.mul_forms(&mf, &mk))?;
                let kf = t.haar(&t.mul_forms(&mk, &mf))?;
                let engine = t.eval_scalar(&h.eval(&(f * k))?);
                let real = t.haar(&mf)?.conj() - t.haar(&t.star_functions(&mf)?)?;
                worst = worst.max((fk - kf).norm()).max((fk - engine).norm()).max(real.norm());
                n += 1;
            }
        }
        out.push(case(4, format!("trace and reality, D={d}"), outcome(worst, n, config.tol)));
    }
    for d in 3..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let mut squares = Vec::new();
        for a in 1..=d / 2 {
            let ap = c.primed(a);
            squares.push(parse_expr(&c, &format!("1/2*sqrt2*(x{a} + x{ap})"))?);
            squares.push(parse_expr(&c, &format!("-1/2*i*sqrt2*(x{a} - x{ap})"))?);
        }
        if let Some(m) = c.middle() {
            squares.push(Element::x(&c, m)?);
        }
        let res = o.check_scalar(|t| {
            let mut worst = Complex64::new(0.0, 0.0);
            for u in &squares {
                let mu = t.embed(u)?;
                let v = t.haar(&t.mul_forms(&mu, &mu))? - 1.0 / d as f64;
                if v.norm() > worst.norm() {
                    worst = v;
                }
            }
            Ok(worst)
        })?;
        out.push(case(5, format!("second moments 1/D, D={d}"), res));
    }
    Ok(())
}

fn stokes_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for n in 2..=4 {
        let c = ctx(n + 1)?;
        let o = Oracle::new(&c, config.clone())?;
        let mut g = RandomElements::new(&c, config.seed + 10 * n as u64);
        let thetas: Vec<Element> = (0..50).map(|_| g.form(n - 1, 3, 4)).collect();
        let omegas: Vec<Element> = (0..20).map(|_| g.form(n, 2, 3)).collect();
        let (mut worst, mut count) = (0f64, 0);
        for t in o.models() {
            for th in &thetas {
                let v = t.integral(&t.embed(&th.d())?)?;
                let e = t.eval_scalar(&integrate(&th.d())?);
                worst = worst.max(v.norm()).max(e.norm());
                count += 1;
            }
            for w in &omegas {
                let v = t.integral(&t.embed(w)?)? - t.eval_scalar(&integrate(w)?);
                worst = worst.max(v.norm());
                count += 1;
            }
        }
        out.push(case(6, format!("Stokes and integral agreement, N={n}"), outcome(worst, count, config.tol)));
    }
    Ok(())
}

fn hodge_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for d in 2..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let mut g = RandomElements::new(&c, config.seed + 100 + d as u64);
        let mut acc = CheckOutcome { max_magnitude: 0.0, evaluations: 0, passed: true };
        for k in 0..=d {
            for (_, b) in basis(&c, k) {
                let f = &g.function(2, 2) * &b;
                let star = hodge_plane(&f)?;
                let r = o.check_with(Locus::Plane, |t| Ok(t.embed(&star)?.sub(&t.hodge(&t.embed(&f)?))))?;
                acc = acc.merge(r);
            }
        }
        out.push(case(7, format!("plane Hodge, D={d}"), acc));
    }
    for d in 3..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let mut acc = CheckOutcome { max_magnitude: 0.0, evaluations: 0, passed: true };
        for k in 0..d {
            for (_, b) in basis(&c, k) {
                let star = hodge_sphere(&b)?;
                let r = o.check_with(Locus::Sphere, |t| Ok(t.embed(&star)?.sub(&t.sphere_hodge(&t.embed(&b)?, k)?)))?;
                acc = acc.merge(r);
            }
        }
        out.push(case(7, format!("sphere Hodge, N={}", d - 1), acc));
    }
    Ok(())
}

/// `dx^{word} = sign * z * dx^{sorted}` in the model, with `z` read off the operators.
fn model_word(t: &TorusRep, word: &[usize]) -> Option<(Complex64, Vec<usize>)> {
    if !word.iter().all_unique() {
        return None;
    }
    let mut op = t.identity();
    let mut sorted_op = t.identity();
    let sorted: Vec<usize> = word.iter().copied().sorted().collect();
    for &a in word {
        op = t.mul(&op, &t.generator(a));
    }
    for &a in &sorted {
        sorted_op = t.mul(&sorted_op, &t.generator(a));
    }
    let perm: Vec<usize> = word.iter().map(|a| sorted.iter().position(|b| b == a).expect("same set")).collect();
    let z = t.ratio(&op, &sorted_op)?;
    Some((z * permutation_sign(&perm) as f64, sorted))
}

fn tensor_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for d in 2..=5 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let (mut worst, mut n) = (0f64, 0);
        for t in o.models() {
            for k in 1..=d.min(4) {
                for upper in (1..=d).permutations(k) {
                    let row = w_row(&c, &upper)?;
                    let (zu, _) = model_word(t, &upper).expect("distinct");
                    for lower in upper.iter().copied().permutations(k) {
                        let (zl, _) = model_word(t, &lower).expect("distinct");
                        let engine = row.get(&lower).map(|s| t.eval_scalar(s)).unwrap_or_default();
                        worst = worst.max((engine - zu / zl).norm());
                        n += 1;
                    }
                    let stray =
                        row.keys().filter(|j| !j.iter().copied().sorted().eq(upper.iter().copied().sorted())).count();
                    worst = worst.max(stray as f64);
                }
            }
            for top in (1..=d).permutations(d) {
                let (z, _) = model_word(t, &top).expect("distinct");
                worst = worst.max((t.eval_scalar(&epsilon_q(&c, &top)?) - z).norm());
                n += 1;
            }
        }
        out.push(case(8, format!("antisymmetrizer and epsilon, D={d}"), outcome(worst, n, config.tol)));
    }
    for d in 2..=6 {
        let c = ctx(d)?;
        let o = Oracle::new(&c, config.clone())?;
        let (mut worst, mut n) = (0f64, 0);
        for t in o.models() {
            for a in 1..=d {
                for b in 1..=d {
                    let z = t.commutation(a, b);
                    worst = worst.max((z * t.commutation(b, a) - 1.0).norm());
                    worst = worst.max((t.eval_scalar(&lambda(&c, a, b, b, a)) - z).norm());
                    n += 1;
                }
            }
        }
        out.push(case(8, format!("braid matrix, D={d}"), outcome(worst, n, config.tol)));
    }
    Ok(())
}

type Dense = Vec<Vec<Complex64>>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn numeric_gammas(rep: &GammaRep, t: &TorusRep) -> Result<Vec<Dense>> {
    let s = rep.size();
    (1..=rep.ctx().dim())
        .map(|i| {
            let g = rep.gamma(i)?;
            Ok((0..s).map(|r| (0..s).map(|c| t.eval_scalar(g.get(r, c))).collect()).collect())
        })
        .collect()
}

fn clifford_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for n in 1..=3 {
        let rep = gamma_rep(n)?;
        let c = rep.ctx().clone();
        let o = Oracle::new(&c, config.clone())?;
        let d = 2 * n + 1;
        let size = rep.size();
        let (mut worst, mut count) = (0f64, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for t in o.models() {
            let g = numeric_gammas(&rep, t)?;
            for i in 1..=d {
                for j in 1..=d {
                    let z = t.commutation(j, i);
                    let (ij, ji) = (dense_mul(&g[i - 1], &g[j - 1]), dense_mul(&g[j - 1], &g[i - 1]));
                    for r in 0..size {
                        for s in 0..size {
                            let id = if r == s && j == c.primed(i) { 2.0 } else { 0.0 };
                            worst = worst.max((ij[r][s] + z * ji[r][s] - id).norm());
                        }
                    }
                    count += 1;
                }
            }
            if n <= 2 {
                let tuples: Vec<Vec<usize>> = if n == 1 {
                    (0..d).map(|_| 1..=d).multi_cartesian_product().collect()
                } else {
                    (0..500).map(|_| (0..d).map(|_| rng.gen_range(1..=d)).collect()).collect()
                };
                for idx in tuples {
                    let mut m = g[idx[0] - 1].clone();
                    for &i in &idx[1..] {
                        m = dense_mul(&m, &g[i - 1]);
                    }
                    let tr: Complex64 = (0..size).map(|r| m[r][r]).sum();
                    let eps = model_word(t, &idx).map(|(z, _)| z.conj()).unwrap_or_default();
                    worst = worst.max((tr - eps * size as f64).norm());
                    count += 1;
                }
            }
        }
        out.push(case(9, format!("Clifford relations and traces, n={n}"), outcome(worst, count, config.tol)));
    }
    Ok(())
}

fn homomorphism_case(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    let c = ctx(5)?;
    let o = Oracle::new(&c, config.clone())?;
    let mut g = RandomElements::new(&c, config.seed + 7);
    let mut acc = CheckOutcome { max_magnitude: 0.0, evaluations: 0, passed: true };
    for _ in 0..200 {
        let k = g.gen_range(0, 2);
        let k2 = g.gen_range(0, 2);
        let (f, h) = (g.form(k, 2, 2), g.form(k2, 2, 2));
        let prod = &f * &h;
        let r = o.check_with(Locus::Plane, |t| Ok(t.embed(&prod)?.sub(&t.mul_forms(&t.embed(&f)?, &t.embed(&h)?))))?;
        acc = acc.merge(r);
    }
    out.push(case(10, "model is an algebra map, D=5", acc));
    Ok(())
}

/// `(1/n!) tau(Tr[e^{(x)2n+1}])` computed entirely in the model.
pub fn numeric_charge(rep: &GammaRep, t: &TorusRep) -> Result<Complex64> {
    let e = projector_for(rep)?;
    let s = e.size();
    let me: Vec<ModelForm> = (0..s * s).map(|k| t.embed(e.get(k / s, k % s).rep())).collect::<Result<_>>()?;
    let de: Vec<ModelForm> = me.iter().map(ModelForm::d).collect();
    let dim = rep.ctx().dim();
    let mut m = me.clone();
    for _ in 0..2 * rep.n() {
        let mut next = Vec::with_capacity(s * s);
        for i in 0..s {
            for j in 0..s {
                let mut acc = ModelForm::zero(dim);
                for k in 0..s {
                    acc = acc.add(&t.mul_forms(&m[i * s + k], &de[k * s + j]));
                }
                next.push(acc);
            }
        }
        m = next;
    }
    let mut tr = ModelForm::zero(dim);
    for i in 0..s {
        tr = tr.add(&m[i * s + i]);
    }
    let norm = tau_normalization(2 * rep.n()).to_complex() / factorial(rep.n()) as f64;
    Ok(t.integral(&tr)? * norm)
}

fn charge_cases(config: &OracleConfig, out: &mut Vec<ConcordanceCase>) -> Result<()> {
    for n in 1..=2 {
        let rep = gamma_rep(n)?;
        let o = Oracle::new(rep.ctx(), config.clone())?;
        let r = o.check_scalar(|t| Ok(numeric_charge(&rep, t)? - 1.0))?;
        out.push(case(10, format!("charge in the model, n={n}"), r));
    }
    let r = monopole_check(config)?;
    out.push(case(10, "curvature against the classical monopole", r));
    Ok(())
}

/// Every exact identity of the Haar, Stokes, Hodge, antisymmetrizer and Clifford suites, exported to the model.
pub fn concordance(config: &OracleConfig) -> Result<Vec<ConcordanceCase>> {
    let mut out = Vec::new();
    haar_cases(config, &mut out)?;
    stokes_cases(config, &mut out)?;
    hodge_cases(config, &mut out)?;
    tensor_cases(config, &mut out)?;
    clifford_cases(config, &mut out)?;
    homomorphism_case(config, &mut out)?;
    charge_cases(config, &mut out)?;
    Ok(out)
}

type RealForm1 = [Complex64; 3];
type RealForm2 = [Complex64; 3];

fn wedge11(a: &RealForm1, b: &RealForm1) -> RealForm2 {
    // components on du^dv, du^dw, dv^dw
    [a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]]
}

fn wedge21(a: &RealForm2, b: &RealForm1) -> Complex64 {
    a[0] * b[2] - a[1] * b[1] + a[2] * b[0]
}

/// `F = e de de` at `q = 1`, `n = 1` against the Bott projector `(1 + u sx - v sy + w sz)/2`
/// differentiated classically, compared tangentially at sample points of the unit sphere.
#[allow(clippy::needless_range_loop)]
pub fn monopole_check(config: &OracleConfig) -> Result<CheckOutcome> {
    let c = commutative_ctx(3)?;
    let rep = GammaRep::new(&c)?;
    let f = curvature(&projector_for(&rep)?)?;
    let t = TorusRep::new(&c, &[], &[])?;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let z = Complex64::new(0.0, 0.0);
    let s2 = std::f64::consts::SQRT_2;
    // complex coframe in terms of (du, dv, dw): x1 = (u + iv)/sqrt2, x2 = w, x3 = conj(x1)
    let coframe: [RealForm1; 3] = [[one / s2, i / s2, z], [z, z, one], [one / s2, -i / s2, z]];
    let sx = [[z, one], [one, z]];
    let sy = [[z, -i], [i, z]];
    let sz = [[one, z], [z, -one]];
    let mut worst: f64 = 0.0;
    let mut n = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.points.max(1) {
        let mut y: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        y.iter_mut().for_each(|a| *a /= r);
        // x1 = (y1 + i y3)/sqrt2 so u = y1, v = y3, w = y2
        let (u, v, w) = (y[0], y[2], y[1]);
        let x = complex_coordinates(&y);
        let mut e = [[z; 2]; 2];
        let mut de = [[[z; 3]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let id = if a == b { one } else { z };
                e[a][b] = (id + sx[a][b] * u - sy[a][b] * v + sz[a][b] * w) / 2.0;
                de[a][b] = [sx[a][b] / 2.0, -sy[a][b] / 2.0, sz[a][b] / 2.0];
            }
        }
        let dc = [Complex64::new(2.0 * u, 0.0), Complex64::new(2.0 * v, 0.0), Complex64::new(2.0 * w, 0.0)];
        for a in 0..2 {
            for b in 0..2 {
                let mut classical = [z; 3];
                for k in 0..2 {
                    for l in 0..2 {
                        let dd = wedge11(&de[k][l], &de[l][b]);
                        for m in 0..3 {
                            classical[m] += e[a][k] * dd[m];
                        }
                    }
                }
                let engine = t.embed(f.get(a, b).rep())?.at_point(&x);
                let mut real = [z; 3];
                for (mask, op) in &engine {
                    let idx: Vec<usize> = (0..3).filter(|p| mask >> p & 1 == 1).collect();
                    let val = t.tau(op);
                    let w2 = wedge11(&coframe[idx[0]], &coframe[idx[1]]);
                    for m in 0..3 {
                        real[m] += val * w2[m];
                    }
                }
                let diff = [real[0] - classical[0], real[1] - classical[1], real[2] - classical[2]];
                worst = worst.max(wedge21(&diff, &dc).norm());
                n += 1;
            }
        }
    }
    Ok(outcome(worst, n, config.tol))
}

/// With every phase set to one: Hodge against the classical star, Haar against
/// classical moments, and the Bott charge. Exact.
pub fn commutative_limit() -> Result<Vec<ConcordanceCase>> {
    let mut out = Vec::new();
    let mut ok = true;
    let mut n = 0;
    for d in 1..=5 {
        let c = commutative_ctx(d)?;
        for k in 0..=d {
            for (j, b) in basis(&c, k) {
                let star = hodge_plane(&b)?;
                let mut engine: Vec<(Vec<usize>, _)> =
                    star.terms().map(|(m, s)| (m.dxset(), s.as_coeff().expect("no phases at q = 1"))).collect();
                engine.sort_by(|a, b| a.0.cmp(&b.0));
                let mut classical = classical_hodge_basis(d, &j);
                classical.sort_by(|a, b| a.0.cmp(&b.0));
                ok &= engine == classical;
                n += 1;
            }
        }
    }
    out.push(case(11, "Hodge star equals the classical star", exact(ok, n)));
    let (mut ok, mut n) = (true, 0);
    for d in 2..=5 {
        let c = commutative_ctx(d)?;
        let mut h = Haar::new(&c);
        for m in monomials_up_to(d, 6) {
            let v = h.eval(&Element::monomial(&c, m.clone()))?;
            ok &= v == ExactScalar::from_coeff(sphere_moment(m.xexp()));
            n += 1;
        }
    }
    out.push(case(11, "Haar equals classical moments", exact(ok, n)));
    let ok = (1..=2).all(|k| charge_commutative(k).map(|v| v.is_one()).unwrap_or(false));
    out.push(case(11, "Bott charge is 1", exact(ok, 2)));
    let c = commutative_ctx(5)?;
    let v = Haar::new(&c).eval(&parse_expr(&c, "x3*x3")?)?;
    out.push(case(11, "h((x^3)^2) = 1/5 at q = 1", exact(v == ExactScalar::rational(rat(1, 5)), 1)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_charge_is_one() {
        let rep = gamma_rep(1).unwrap();
        let o = Oracle::new(rep.ctx(), OracleConfig::default()).unwrap();
        for t in o.models() {
            assert!((numeric_charge(&rep, t).unwrap() - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn monopole() {
        let r = monopole_check(&OracleConfig::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn commutative() {
        for c in commutative_limit().unwrap() {
            assert!(c.outcome.passed, "{}", c.name);
        }
    }
}
