use std::sync::Arc;

use itertools::Itertools;
use twistcalc::expr::parse_expr;
use twistcalc::ncalg::{Ctx, Element};
use twistcalc::qphase::{DeformationContext, ExactScalar};
use twistcalc::random::RandomElements;
use twistcalc::sphere::{
    hodge_sphere, hodge_sphere_via_plane, ideal_certificate, in_ideal, integrate, pairing_sphere, reduce_mod_c,
    sphere_equal, top_decompose, volume_rep,
};

fn ctx(d: usize) -> Ctx {
    Arc::new(DeformationContext::new(d).unwrap())
}

fn basis(c: &Ctx, k: usize) -> Vec<Element> {
    (1..=c.dim()).combinations(k).map(|s| Element::dx_word(c, &s).unwrap()).collect()
}

fn sign(n: usize) -> ExactScalar {
    ExactScalar::int(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn assert_class_eq(a: &Element, b: &Element, what: &str) {
    assert!(sphere_equal(a, b).unwrap(), "{what}: [{a}] != [{b}]");
}

#[test]
fn sphere_hodge_suite() {
    for d in 2..=5 {
        let c = ctx(d);
        let n = d - 1;
        let vol = volume_rep(&c).unwrap();
        let one = Element::one(&c);
        assert_class_eq(&hodge_sphere(&one).unwrap(), &vol, "*1");
        assert_class_eq(&hodge_sphere(&vol).unwrap(), &one, "*V");
        for k in 0..=n {
            let s = sign(k * (n - k));
            for t in basis(&c, k) {
                let st = hodge_sphere(&t).unwrap();
                assert_class_eq(&hodge_sphere(&st).unwrap(), &t.scale(&s), "**");
                assert_class_eq(&hodge_sphere(&t.star()).unwrap(), &st.star(), "reality");
                assert_class_eq(&st, &hodge_sphere_via_plane(&t).unwrap(), "through plane");
                for e in basis(&c, k) {
                    let se = hodge_sphere(&e).unwrap();
                    let p = pairing_sphere(&t, &e).unwrap();
                    assert_class_eq(&(&t * &se), &(&p * &vol), "defining relation");
                    assert_class_eq(&(&t * &se), &(&st * &e).scale(&s), "graded symmetry");
                    assert_class_eq(&p, &pairing_sphere(&st, &se).unwrap(), "isometry");
                }
                for nu in basis(&c, n - k) {
                    let lhs = pairing_sphere(&st, &nu).unwrap();
                    let rhs = pairing_sphere(&(&t * &nu), &vol).unwrap();
                    assert_class_eq(&lhs, &rhs, "adjunction");
                }
            }
        }
    }
}

#[test]
fn sphere_hodge_is_function_linear() {
    let c = ctx(5);
    let mut g = RandomElements::new(&c, 11);
    for k in 0..=4 {
        for t in basis(&c, k) {
            let f = g.function(2, 2);
            let h = g.function(2, 2);
            let lhs = hodge_sphere(&(&(&f * &t) * &h)).unwrap();
            let rhs = &(&f * &hodge_sphere(&t).unwrap()) * &h;
            assert_class_eq(&lhs, &rhs, "linearity");
        }
    }
}

#[test]
fn stokes() {
    for n in 2..=4 {
        let c = ctx(n + 1);
        let mut g = RandomElements::new(&c, 100 + n as u64);
        for _ in 0..50 {
            let theta = g.form(n - 1, 3, 4);
            assert!(integrate(&theta.d()).unwrap().is_zero(), "N={n} theta={theta}");
        }
    }
}

#[test]
fn integral_is_a_trace_and_representative_independent() {
    for n in 2..=4 {
        let c = ctx(n + 1);
        let mut g = RandomElements::new(&c, 200 + n as u64);
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let dc = Element::dc(&c);
        for _ in 0..20 {
            let a = g.function(2, 3);
            let w = g.form(n, 2, 3);
            assert_eq!(integrate(&(&a * &w)).unwrap(), integrate(&(&w * &a)).unwrap());
            let alpha = g.form(n, 2, 2);
            let beta = g.form(n - 1, 2, 2);
            let shifted = &(&w + &(&cm1 * &alpha)) + &(&dc * &beta);
            assert_eq!(integrate(&shifted).unwrap(), integrate(&w).unwrap());
        }
    }
}

#[test]
fn ideal_is_differential_and_star_closed() {
    for d in 3..=5 {
        let c = ctx(d);
        let mut g = RandomElements::new(&c, 300 + d as u64);
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let dc = Element::dc(&c);
        for k in 0..d - 1 {
            for _ in 0..5 {
                let alpha = g.form(k + 1, 2, 2);
                let beta = g.form(k, 2, 2);
                let member = &(&cm1 * &alpha) + &(&dc * &beta);
                assert!(in_ideal(&member));
                assert!(in_ideal(&member.d()));
                assert!(in_ideal(&member.star()));
                let (a2, b2) = ideal_certificate(&member).unwrap();
                assert_eq!(&(&cm1 * &a2) + &(&dc * &b2), member);
            }
        }
    }
}

#[test]
fn function_classes_match_reduction() {
    let c = ctx(5);
    let mut g = RandomElements::new(&c, 5);
    let cm1 = &Element::c(&c) - &Element::one(&c);
    for _ in 0..30 {
        let f = g.function(3, 4);
        let h = g.function(2, 2);
        let same = &f + &(&cm1 * &h);
        assert_eq!(reduce_mod_c(&same).unwrap(), reduce_mod_c(&f).unwrap());
        assert!(sphere_equal(&same, &f).unwrap());
        if !reduce_mod_c(&f).unwrap().is_zero() {
            assert!(!sphere_equal(&f, &Element::zero(&c)).unwrap());
        }
    }
}

#[test]
fn volume_form_is_real_and_normalised() {
    for d in 2..=5 {
        let c = ctx(d);
        let vol = volume_rep(&c).unwrap();
        assert_class_eq(&vol.star(), &vol, "real volume");
        assert!(integrate(&vol).unwrap().is_one());
        assert!(!sphere_equal(&vol, &Element::zero(&c)).unwrap());
    }
}

#[test]
fn top_decompose_single_column() {
    // N = 2: x^3 omega_3 alone gives x^3 times the x^3-component of dc/2
    let c = ctx(3);
    let w3 = twistcalc::sphere::omega_k(&c, 3).unwrap();
    let f = top_decompose(&(&Element::x(&c, 3).unwrap() * &w3)).unwrap();
    assert_eq!(f, parse_expr(&c, "x3*x1").unwrap());
}

#[test]
fn connes_landi_relations() {
    let c = ctx(5);
    let half = parse_expr(&c, "1/2*sqrt2").unwrap();
    let alpha = &half * &parse_expr(&c, "x1").unwrap();
    let alpha_s = &half * &parse_expr(&c, "x5").unwrap();
    let beta = &half * &parse_expr(&c, "x2").unwrap();
    let beta_s = &half * &parse_expr(&c, "x4").unwrap();
    let t = parse_expr(&c, "1/2*x3 + 1/2").unwrap();
    let lambda = parse_expr(&c, "q(1,2)").unwrap();
    let lambda_bar = parse_expr(&c, "q(1,2)^-1").unwrap();
    let zero = Element::zero(&c);
    let eq = |a: &Element, b: &Element| reduce_mod_c(&(a - b)).unwrap().is_zero();
    assert_eq!(alpha.star(), alpha_s);
    assert_eq!(beta.star(), beta_s);
    assert_eq!(t.star(), t);
    assert!(eq(&(&alpha * &beta), &(&lambda * &(&beta * &alpha))));
    assert!(eq(&(&alpha * &beta_s), &(&lambda_bar * &(&beta_s * &alpha))));
    assert!(eq(&(&alpha * &alpha_s), &(&alpha_s * &alpha)));
    assert!(eq(&(&beta * &beta_s), &(&beta_s * &beta)));
    for x in [&alpha, &beta, &alpha_s, &beta_s] {
        assert!(eq(&(&t * x), &(x * &t)));
    }
    let lhs = &(&(&alpha * &alpha_s) + &(&beta * &beta_s)) + &(&t * &t);
    assert!(eq(&lhs, &t));
    assert!(!eq(&t, &zero));
}
