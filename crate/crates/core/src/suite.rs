//! Named invariant suites with serialisable reports.

use std::fmt::Display;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chern::{charge_for, clifford_trace, clifford_trace_formula, curvature, projector_for, GammaRep};
use crate::error::{Error, Result};
use crate::expr::parse_expr;
use crate::haar::{partial, Haar};
use crate::ncalg::{Ctx, Element};
use crate::oracle::{commutative_limit, concordance, OracleConfig};
use crate::qphase::{rat, DeformationContext, ExactScalar};
use crate::random::RandomElements;
use crate::sphere::{
    hodge_sphere, hodge_sphere_via_plane, ideal_certificate, in_ideal, integrate, pairing_sphere, reduce_mod_c,
    sphere_equal, volume_rep,
};
use crate::tensor::{antisym_w, epsilon_q, epsilon_qinv, hodge_plane, lambda, pairing_plane};

pub const SUITES: [&str; 8] = ["qphase", "ncalg", "tensor", "haar", "sphere", "hodge", "chern", "oracle"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub expression: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Every case expression, in execution order.
    pub checks: Vec<String>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub dim: usize,
    pub n: usize,
    pub seed: u64,
    pub moduli: Option<Vec<u32>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { dim: 5, n: 2, seed: 42, moduli: None }
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<String>,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check(&mut self, ok: bool, expression: impl Display, expected: impl Display, got: impl Display) {
        let expression = expression.to_string();
        self.checks.push(expression.clone());
        if !ok {
            self.failures.push(Failure { expression, expected: expected.to_string(), got: got.to_string() });
        }
    }

    fn eq_elem(&mut self, what: impl Display, expected: &Element, got: &Element) {
        self.check(expected == got, what, expected, got);
    }

    fn eq_class(&mut self, what: impl Display, expected: &Element, got: &Element) -> Result<()> {
        let ok = sphere_equal(expected, got)?;
        self.check(ok, what, format!("[{expected}]"), format!("[{got}]"));
        Ok(())
    }

    fn eq_scalar(&mut self, ctx: &Ctx, what: impl Display, expected: &ExactScalar, got: &ExactScalar) {
        let p = ctx.params();
        self.check(expected == got, what, expected.display(p), got.display(p));
    }
}

fn ctx(d: usize) -> Result<Ctx> {
    Ok(Arc::new(DeformationContext::new(d)?))
}

fn basis(c: &Ctx, k: usize) -> Result<Vec<Element>> {
    (1..=c.dim()).combinations(k).map(|s| Element::dx_word(c, &s)).collect()
}

fn sign(n: usize) -> ExactScalar {
    ExactScalar::int(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn qphase_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let d = c.dim();
    for a in 1..=d {
        for b in 1..=d {
            let q = c.reduce_pair(a, b)?;
            let (ap, bp) = (c.primed(a), c.primed(b));
            r.check(q == c.reduce_pair(ap, bp)?, format!("q({a},{b}) = q({ap},{bp})"), "equal", "different");
            r.check(q.inv() == c.reduce_pair(b, a)?, format!("q({a},{b}) q({b},{a}) = 1"), "equal", "different");
            r.check(q.inv() == c.reduce_pair(a, bp)?, format!("q({a},{b}) q({a},{bp}) = 1"), "equal", "different");
        }
        r.check(c.reduce_pair(a, a)?.is_one(), format!("q({a},{a}) = 1"), "1", "not 1");
        r.check(c.reduce_pair(a, c.primed(a))?.is_one(), format!("q({a},{a}') = 1"), "1", "not 1");
    }
    let mut g = RandomElements::new(&c, o.seed);
    for _ in 0..50 {
        let (x, y, z) = (g.scalar(), g.scalar(), g.scalar());
        r.eq_scalar(&c, "(xy)z = x(yz)", &(&(&x * &y) * &z), &(&x * &(&y * &z)));
        r.eq_scalar(&c, "x(y+z) = xy+xz", &(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z)));
        r.eq_scalar(&c, "conj(xy) = conj(x)conj(y)", &(&x * &y).conj(), &(&x.conj() * &y.conj()));
        r.eq_scalar(&c, "conj conj x = x", &x.conj().conj(), &x);
    }
    Ok(())
}

fn ncalg_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let p = |s: &str| parse_expr(&c, s);
    if c.dim() >= 2 {
        r.eq_elem("x2*x1", &p("q(1,2)^-1*x1*x2")?, &p("x2*x1")?);
        r.eq_elem("dx2*dx1", &p("-q(1,2)^-1*dx1*dx2")?, &p("dx2*dx1")?);
    }
    r.check(p("dx1*dx1")?.is_zero(), "dx1*dx1", "0", p("dx1*dx1")?);
    let cc = Element::c(&c);
    let mut g = RandomElements::new(&c, o.seed);
    for _ in 0..30 {
        let ka = g.gen_range(0, 2);
        let kb = g.gen_range(0, 2);
        let a = g.form(ka, 2, 2);
        let b = g.form(kb, 2, 2);
        let e = g.form(1, 2, 1);
        r.eq_elem(format!("({a})({b})({e}) associative"), &(&(&a * &b) * &e), &(&a * &(&b * &e)));
        r.check(a.d().d().is_zero(), format!("d d ({a})"), "0", a.d().d());
        let leib = &(&a.d() * &b) + &(&a.grade_involution() * &b.d());
        r.eq_elem(format!("d(({a})({b}))"), &leib, &(&a * &b).d());
        r.eq_elem(format!("(({a})^*)^*"), &a, &a.star().star());
        let rev = (&b.star() * &a.star()).scale(&sign(ka * kb));
        r.eq_elem(format!("(({a})({b}))^*"), &rev, &(&a * &b).star());
        r.eq_elem(format!("c ({a}) = ({a}) c"), &(&cc * &a), &(&a * &cc));
        let text = a.to_string();
        r.eq_elem(format!("parse(print({a}))"), &a, &parse_expr(&c, &text)?);
    }
    Ok(())
}

fn tensor_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let d = c.dim();
    for k in 1..=d.min(3) {
        for upper in (1..=d).permutations(k) {
            let lhs = Element::dx_word(&c, &upper)?;
            for lower in upper.iter().copied().permutations(k) {
                let w = antisym_w(&c, &upper, &lower)?;
                let rhs = Element::dx_word(&c, &lower)?.scale(&w);
                r.eq_elem(format!("dx{upper:?} = W dx{lower:?}"), &lhs, &rhs);
            }
        }
    }
    for top in (1..=d).permutations(d) {
        let e = epsilon_q(&c, &top)?;
        let lhs = Element::dx_word(&c, &top)?;
        let rhs = Element::dx_word(&c, &(1..=d).collect::<Vec<_>>())?.scale(&e);
        r.eq_elem(format!("dx{top:?} = eps dx[1..{d}]"), &rhs, &lhs);
    }
    let mut g = RandomElements::new(&c, o.seed);
    for k in d.saturating_sub(2).max(1)..d {
        let f = ExactScalar::int((1..=(d - k) as i64).product());
        for _ in 0..10 {
            let i = distinct(&mut g, d, k);
            let j = distinct(&mut g, d, k);
            let mut acc = ExactScalar::zero();
            for l in (1..=d).permutations(d - k) {
                let a = epsilon_q(&c, &[i.clone(), l.clone()].concat())?;
                let b = epsilon_qinv(&c, &[j.clone(), l].concat())?;
                acc += &(&a * &b);
            }
            let w = &f * &antisym_w(&c, &i, &j)?;
            r.eq_scalar(&c, format!("eps_q{i:?} eps_q^-1{j:?} contracted"), &w, &acc);
        }
    }
    for a in 1..=d {
        for b in 1..=d {
            let sq = &lambda(&c, a, b, b, a) * &lambda(&c, b, a, a, b);
            r.check(sq.is_one(), format!("Lambda^2 at ({a},{b})"), "1", sq.display(c.params()));
        }
    }
    plane_hodge_checks(&c, r)
}

fn distinct(g: &mut RandomElements, d: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let a = g.gen_range(1, d);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn plane_hodge_checks(c: &Ctx, r: &mut Recorder) -> Result<()> {
    let d = c.dim();
    let vol = Element::volume(c);
    let one = Element::one(c);
    r.eq_elem("*1 = V", &vol, &hodge_plane(&one)?);
    r.eq_elem("*V = 1", &one, &hodge_plane(&vol)?);
    for k in 0..=d {
        let s = sign(k * (d - k));
        for t in basis(c, k)? {
            let st = hodge_plane(&t)?;
            r.eq_elem(format!("** ({t})"), &t.scale(&s), &hodge_plane(&st)?);
            r.eq_elem(format!("*(({t})^*)"), &st.star(), &hodge_plane(&t.star())?);
            for e in basis(c, k)? {
                let se = hodge_plane(&e)?;
                let pr = pairing_plane(&t, &e)?;
                r.eq_elem(format!("({t}) ^ *({e})"), &(&pr * &vol), &(&t * &se));
                r.eq_elem(format!("<*({t}), *({e})>"), &pr, &pairing_plane(&st, &se)?);
            }
        }
    }
    Ok(())
}

fn haar_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let d = c.dim();
    let mut h = Haar::new(&c);
    let hc = h.eval(&Element::c(&c))?;
    r.eq_scalar(&c, "h(c) = 1", &ExactScalar::one(), &hc);
    r.eq_scalar(&c, "h(1)", &ExactScalar::one(), &h.eval(&Element::one(&c))?);
    let cm1 = &Element::c(&c) - &Element::one(&c);
    for deg in 0..=4 {
        for idx in (1..=d).combinations_with_replacement(deg) {
            let mut f = Element::one(&c);
            for a in idx {
                f = &f * &Element::x(&c, a)?;
            }
            let v = h.eval(&(&cm1 * &f))?;
            r.eq_scalar(&c, format!("h((c-1) {f})"), &ExactScalar::zero(), &v);
        }
    }
    let inv_d = ExactScalar::rational(rat(1, d as i64));
    for a in 1..=d / 2 {
        let ap = c.primed(a);
        let u = parse_expr(&c, &format!("1/2*sqrt2*(x{a} + x{ap})"))?;
        r.eq_scalar(&c, format!("h(u{a}^2)"), &inv_d, &h.eval(&(&u * &u))?);
    }
    if let Some(m) = c.middle() {
        let w = Element::x(&c, m)?;
        r.eq_scalar(&c, format!("h(x{m}^2)"), &inv_d, &h.eval(&(&w * &w))?);
    }
    let mut g = RandomElements::new(&c, o.seed);
    for _ in 0..100 {
        let (f, k) = (g.function(2, 4), g.function(2, 4));
        r.eq_scalar(&c, format!("h(({f})({k})) = h(({k})({f}))"), &h.eval(&(&f * &k))?, &h.eval(&(&k * &f))?);
        r.eq_scalar(&c, format!("conj h({f}) = h(({f})^*)"), &h.eval(&f)?.conj(), &h.eval(&f.star())?);
    }
    for _ in 0..5 {
        let f = g.function(3, 3);
        for a in 1..=d {
            for b in 1..=d {
                let q = Element::scalar(&c, ExactScalar::phase(c.reduce_pair(a, b)?));
                let lhs = partial(a, &partial(b, &f)?)?;
                let rhs = &q * &partial(b, &partial(a, &f)?)?;
                r.eq_elem(format!("d{a} d{b} ({f})"), &rhs, &lhs);
            }
        }
    }
    Ok(())
}

fn sphere_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let n = c.dim() - 1;
    let vol = volume_rep(&c)?;
    r.eq_scalar(&c, "integral of the volume", &ExactScalar::one(), &integrate(&vol)?);
    let f = parse_expr(&c, "x1^2*x3 + x2")?;
    let cm1 = &Element::c(&c) - &Element::one(&c);
    r.eq_elem("reduce((c-1) f + f)", &reduce_mod_c(&f)?, &reduce_mod_c(&(&(&cm1 * &f) + &f))?);
    let mut g = RandomElements::new(&c, o.seed);
    if n >= 1 {
        for _ in 0..50 {
            let theta = g.form(n - 1, 3, 4);
            let v = integrate(&theta.d())?;
            r.eq_scalar(&c, format!("integral d({theta})"), &ExactScalar::zero(), &v);
        }
    }
    let dc = Element::dc(&c);
    for _ in 0..20 {
        let k = g.gen_range(0, n.saturating_sub(1));
        let alpha = g.form(k + 1, 2, 2);
        let beta = g.form(k, 2, 2);
        let member = &(&cm1 * &alpha) + &(&dc * &beta);
        r.check(in_ideal(&member), format!("({member}) in J"), "member", "not a member");
        r.check(in_ideal(&member.d()), format!("d({member}) in J"), "member", "not a member");
        r.check(in_ideal(&member.star()), format!("({member})^* in J"), "member", "not a member");
        let ok = match ideal_certificate(&member) {
            Some((a2, b2)) => &(&cm1 * &a2) + &(&dc * &b2) == member,
            None => false,
        };
        r.check(ok, format!("certificate for ({member})"), "valid", "invalid");
        let w = g.form(n, 2, 3);
        let a = g.function(2, 3);
        r.eq_scalar(&c, format!("integral trace ({a}), ({w})"), &integrate(&(&a * &w))?, &integrate(&(&w * &a))?);
    }
    let x1 = Element::x(&c, 1)?;
    r.check(!in_ideal(&x1), "x1 in J", "not a member", "member");
    Ok(())
}

fn hodge_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let c = ctx(o.dim)?;
    let n = c.dim() - 1;
    let vol = volume_rep(&c)?;
    let one = Element::one(&c);
    r.eq_class("*1 = V", &vol, &hodge_sphere(&one)?)?;
    r.eq_class("*V = 1", &one, &hodge_sphere(&vol)?)?;
    for k in 0..=n {
        let s = sign(k * (n - k));
        for t in basis(&c, k)? {
            let st = hodge_sphere(&t)?;
            r.eq_class(format!("** [{t}]"), &t.scale(&s), &hodge_sphere(&st)?)?;
            r.eq_class(format!("*([{t}]^*)"), &st.star(), &hodge_sphere(&t.star())?)?;
            r.eq_class(format!("*[{t}] via the plane"), &st, &hodge_sphere_via_plane(&t)?)?;
            for e in basis(&c, k)? {
                let se = hodge_sphere(&e)?;
                let p = pairing_sphere(&t, &e)?;
                r.eq_class(format!("[{t}] ^ *[{e}]"), &(&p * &vol), &(&t * &se))?;
                r.eq_class(format!("graded symmetry [{t}], [{e}]"), &(&st * &e).scale(&s), &(&t * &se))?;
                r.eq_class(format!("<*[{t}], *[{e}]>"), &p, &pairing_sphere(&st, &se)?)?;
            }
            for nu in basis(&c, n - k)? {
                let lhs = pairing_sphere(&st, &nu)?;
                let rhs = pairing_sphere(&(&t * &nu), &vol)?;
                r.eq_class(format!("<*[{t}], [{nu}]>"), &rhs, &lhs)?;
            }
        }
    }
    Ok(())
}

fn chern_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let n = o.n;
    let c = ctx(2 * n + 1)?;
    let rep = GammaRep::new(&c)?;
    let d = 2 * n + 1;
    for i in 1..=d {
        for j in 1..=d {
            let ok = rep.relation_defect(i, j)?.is_zero();
            r.check(ok, format!("g{i} g{j} + q({j},{i}) g{j} g{i} = 2 g^({i},{j})"), "holds", "fails");
        }
    }
    let mut g = RandomElements::new(&c, o.seed);
    for _ in 0..100 {
        let idx: Vec<usize> = (0..d).map(|_| g.gen_range(1, d)).collect();
        let t = clifford_trace(&rep, &idx)?;
        let f = clifford_trace_formula(&rep, &idx)?;
        r.eq_scalar(&c, format!("Tr g{idx:?}"), &f, &t);
    }
    let e = projector_for(&rep)?;
    r.check(e.mul(&e).equals(&e)?, "e^2 = e", "holds", "fails");
    r.check(e.star().equals(&e)?, "e^* = e", "holds", "fails");
    let f = curvature(&e)?;
    let minus = f.scale(&ExactScalar::int(-1));
    r.check(f.star().equals(&minus)?, "F^* = -F", "holds", "fails");
    r.check(e.mul(&f).equals(&f)?, "e F = F", "holds", "fails");
    let ch = charge_for(&rep)?;
    r.eq_scalar(&c, "charge = 1", &ExactScalar::one(), &ch);
    Ok(())
}

fn oracle_suite(o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    let config = OracleConfig { moduli: o.moduli.clone(), seed: o.seed, ..OracleConfig::default() };
    for case in concordance(&config)?.into_iter().chain(commutative_limit()?) {
        let got = format!("{:.3e} over {} evaluations", case.outcome.max_magnitude, case.outcome.evaluations);
        r.check(case.outcome.passed, &case.name, format!("< {:e}", config.tol), got);
    }
    Ok(())
}

fn run_one(name: &str, o: &SuiteOptions, r: &mut Recorder) -> Result<()> {
    match name {
        "qphase" => qphase_suite(o, r),
        "ncalg" => ncalg_suite(o, r),
        "tensor" => tensor_suite(o, r),
        "haar" => haar_suite(o, r),
        "sphere" => sphere_suite(o, r),
        "hodge" => hodge_suite(o, r),
        "chern" => chern_suite(o, r),
        "oracle" => oracle_suite(o, r),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

/// Runs one named suite, or every suite for `all`.
pub fn run_suite(name: &str, o: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = Recorder::default();
    if name == "all" {
        for s in SUITES {
            let mut sub = Recorder::default();
            run_one(s, o, &mut sub)?;
            r.checks.extend(sub.checks.into_iter().map(|e| format!("{s}: {e}")));
            r.failures.extend(sub.failures.into_iter().map(|mut f| {
                f.expression = format!("{s}: {}", f.expression);
                f
            }));
        }
    } else {
        run_one(name, o, &mut r)?;
    }
    Ok(SuiteReport {
        name: name.to_string(),
        seed: o.seed,
        cases: r.checks.len(),
        failures: r.failures,
        checks: r.checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
