use std::sync::Arc;

use itertools::Itertools;
use num::complex::Complex64;
use rand::Rng;
use twistcalc::expr::parse_expr;
use twistcalc::haar::{haar_plane, partial, Haar};
use twistcalc::ncalg::{Ctx, Element, Monomial};
use twistcalc::qphase::{rat, DeformationContext, ExactScalar};
use twistcalc::random::RandomElements;

fn ctx(d: usize) -> Ctx {
    Arc::new(DeformationContext::new(d).unwrap())
}

fn monomials_up_to(d: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        for idx in (0..d).combinations_with_replacement(deg as usize) {
            let mut x = vec![0; d];
            for i in idx {
                x[i] += 1;
            }
            out.push(Monomial::new(x, &[]));
        }
    }
    out
}

fn double_factorial_odd(m: u32) -> f64 {
    // (m-1)!! for even m
    (1..m).step_by(2).map(|k| k as f64).product()
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).map(|j| (n - j) as f64 / (j + 1) as f64).product()
}

/// Uniform average of the commutative monomial on the round sphere, through real coordinates
/// `x^a = (u + i v)/sqrt2`, `x^a' = conj`, and the middle coordinate itself.
fn classical_moment(alpha: &[u32]) -> Complex64 {
    let d = alpha.len();
    let total: u32 = alpha.iter().sum();
    if total % 2 == 1 {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for a in 0..d / 2 {
        let (p, r) = (alpha[a], alpha[d - 1 - a]);
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..=p {
            for l in 0..=r {
                let mu = p - j + r - l;
                let mv = j + l;
                if mu % 2 == 1 || mv % 2 == 1 {
                    continue;
                }
                let phase = Complex64::i().powu(j) * (-Complex64::i()).powu(l);
                s += phase * binom(p, j) * binom(r, l) * double_factorial_odd(mu) * double_factorial_odd(mv);
            }
        }
        acc *= s / 2f64.powf((p + r) as f64 / 2.0);
    }
    if d % 2 == 1 {
        let m = alpha[d / 2];
        if m % 2 == 1 {
            return Complex64::new(0.0, 0.0);
        }
        acc *= double_factorial_odd(m);
    }
    let denom: f64 = (0..total / 2).map(|t| (d as u32 + 2 * t) as f64).product();
    acc / denom
}

#[test]
fn vanishes_on_the_sphere_relation() {
    for d in 3..=5 {
        let c = ctx(d);
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let mut h = Haar::new(&c);
        for m in monomials_up_to(d, 6) {
            let f = Element::monomial(&c, m.clone());
            assert!(h.eval(&(&cm1 * &f)).unwrap().is_zero(), "D={d} f={m}");
            assert!(h.eval(&(&f * &cm1)).unwrap().is_zero(), "D={d} f={m}");
        }
    }
}

#[test]
fn trace_and_reality() {
    for d in 2..=5 {
        let c = ctx(d);
        let mut g = RandomElements::new(&c, 40 + d as u64);
        let mut h = Haar::new(&c);
        for _ in 0..100 {
            let f = g.function(2, 4);
            let k = g.function(2, 4);
            assert_eq!(h.eval(&(&f * &k)).unwrap(), h.eval(&(&k * &f)).unwrap());
            assert_eq!(h.eval(&f).unwrap().conj(), h.eval(&f.star()).unwrap());
        }
    }
}

#[test]
fn positivity() {
    for d in 2..=5 {
        let c = ctx(d);
        let mut g = RandomElements::new(&c, 70 + d as u64);
        let mut h = Haar::new(&c);
        for _ in 0..30 {
            let f = g.function(3, 3);
            let v = h.eval(&(&f.star() * &f)).unwrap();
            let theta: Vec<f64> = (0..c.num_params()).map(|_| g.rng().gen_range(0.0..std::f64::consts::TAU)).collect();
            let z = v.eval(&theta);
            assert!(z.im.abs() < 1e-9 && z.re > 0.0, "D={d} f={f} h={z}");
        }
    }
}

#[test]
fn ordered_monomials_match_classical_moments() {
    for d in 2..=5 {
        let q = ctx(d);
        let cl: Ctx = Arc::new(DeformationContext::commutative(d).unwrap());
        let mut hq = Haar::new(&q);
        let mut hc = Haar::new(&cl);
        for m in monomials_up_to(d, 6) {
            let vq = hq.eval(&Element::monomial(&q, m.clone())).unwrap();
            let vc = hc.eval(&Element::monomial(&cl, m.clone())).unwrap();
            let expected = classical_moment(m.xexp());
            assert!((vc.eval(&[]) - expected).norm() < 1e-12, "D={d} m={m}");
            assert_eq!(vq.as_coeff(), vc.as_coeff(), "D={d} m={m}");
        }
    }
}

#[test]
fn real_coordinate_second_moments() {
    for d in 3..=5 {
        let c = ctx(d);
        let expected = ExactScalar::rational(rat(1, d as i64));
        for a in 1..=d / 2 {
            let ap = c.primed(a);
            let u = parse_expr(&c, &format!("1/2*sqrt2*(x{a} + x{ap})")).unwrap();
            let v = parse_expr(&c, &format!("-1/2*i*sqrt2*(x{a} - x{ap})")).unwrap();
            assert_eq!(u.star(), u);
            assert_eq!(v.star(), v);
            assert_eq!(haar_plane(&(&u * &u)).unwrap(), expected);
            assert_eq!(haar_plane(&(&v * &v)).unwrap(), expected);
        }
        if let Some(m) = c.middle() {
            let w = Element::x(&c, m).unwrap();
            assert_eq!(haar_plane(&(&w * &w)).unwrap(), expected);
        }
    }
}

#[test]
fn partials_q_commute() {
    for d in 2..=5 {
        let c = ctx(d);
        let mut g = RandomElements::new(&c, 90 + d as u64);
        for _ in 0..10 {
            let f = g.function(4, 4);
            for a in 1..=d {
                for b in 1..=d {
                    let q = Element::scalar(&c, ExactScalar::phase(c.reduce_pair(a, b).unwrap()));
                    let lhs = partial(a, &partial(b, &f).unwrap()).unwrap();
                    let rhs = &q * &partial(b, &partial(a, &f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "a={a} b={b} f={f}");
                }
            }
        }
    }
}

#[test]
fn leibniz_rule() {
    let c = ctx(5);
    let mut g = RandomElements::new(&c, 3);
    for _ in 0..20 {
        let f = g.function(3, 3);
        for a in 1..=5 {
            for s in 1..=5 {
                let xa = Element::x(&c, a).unwrap();
                let q = Element::scalar(&c, ExactScalar::phase(c.reduce_pair(a, s).unwrap()));
                let lhs = partial(s, &(&xa * &f)).unwrap();
                let mut rhs = &(&q * &xa) * &partial(s, &f).unwrap();
                if a == s {
                    rhs = &rhs + &f;
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
