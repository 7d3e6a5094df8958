mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::*;
use itertools::Itertools;
use twistcalc::ncalg::{Ctx, Element, Monomial};
use twistcalc::qphase::{DeformationContext, ExactScalar};
use twistcalc::tensor::{antisym_w, epsilon_q, epsilon_qinv, hodge_plane, metric, pairing_plane, w_row, Row};

#[test]
fn w_recursion_matches_permutation_sum() {
    for d in 1..=5 {
        let c = ctx(d);
        for k in 1..=4 {
            for upper in tuples(d, k) {
                assert_eq!(w_row(&c, &upper).unwrap(), brute_w_row(&c, &upper), "D={d} I={upper:?}");
            }
        }
    }
}

#[test]
fn w_entries_match_wedge_reordering() {
    let c = ctx(5);
    for upper in (1..=5).permutations(3) {
        let lhs = Element::dx_word(&c, &upper).unwrap();
        for lower in upper.iter().copied().permutations(3) {
            let rhs = Element::dx_word(&c, &lower).unwrap();
            let w = antisym_w(&c, &upper, &lower).unwrap();
            assert_eq!(lhs, rhs.scale(&w));
        }
    }
}

#[test]
fn lambda_is_an_involutive_braid_matrix() {
    for d in 1..=6 {
        let c = ctx(d);
        for t in tuples(d, 2) {
            let mut row = Row::new();
            row.insert(t.clone(), ExactScalar::one());
            let twice = apply_lambda(&c, &apply_lambda(&c, &row, 0), 0);
            assert_eq!(twice, row);
        }
        for t in tuples(d, 3) {
            let mut row = Row::new();
            row.insert(t.clone(), ExactScalar::one());
            let lhs = apply_lambda(&c, &apply_lambda(&c, &apply_lambda(&c, &row, 0), 1), 0);
            let rhs = apply_lambda(&c, &apply_lambda(&c, &apply_lambda(&c, &row, 1), 0), 1);
            assert_eq!(lhs, rhs, "D={d} {t:?}");
        }
    }
}

#[test]
fn top_antisymmetrizer_is_inverse_epsilon() {
    for d in 1..=5 {
        let c = ctx(d);
        let id: Vec<usize> = (1..=d).collect();
        let top = w_row(&c, &id).unwrap();
        for j in tuples(d, d) {
            assert_eq!(top.get(&j).cloned().unwrap_or_default(), epsilon_qinv(&c, &j).unwrap());
            assert_eq!(antisym_w(&c, &j, &id).unwrap(), epsilon_q(&c, &j).unwrap());
        }
    }
}

#[test]
fn epsilon_contraction_gives_antisymmetrizer() {
    for d in 1..=4 {
        let c = ctx(d);
        for k in 1..=d {
            let f = ExactScalar::int(factorial(d - k));
            for i in tuples(d, k) {
                let row = w_row(&c, &i).unwrap();
                for j in tuples(d, k) {
                    let w = &f * &row.get(&j).cloned().unwrap_or_default();
                    assert_eq!(contraction(&c, &i, &j, false), w, "D={d} {i:?} {j:?}");
                    assert_eq!(contraction(&c, &i, &j, true), w, "D={d} {i:?} {j:?}");
                }
            }
        }
    }
}

#[test]
fn epsilon_contraction_random_d5() {
    use rand::{Rng, SeedableRng};
    let c = ctx(5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let k = rng.gen_range(1..=5);
        let i: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
        // draw lower indices mostly as permutations of the upper ones
        let mut j = i.clone();
        if rng.gen_bool(0.2) {
            j[0] = rng.gen_range(1..=5);
        }
        for _ in 0..k {
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k);
            j.swap(a, b);
        }
        let w = &ExactScalar::int(factorial(5 - k)) * &antisym_w(&c, &i, &j).unwrap();
        assert_eq!(contraction(&c, &i, &j, false), w);
        assert_eq!(contraction(&c, &i, &j, true), w);
    }
}

#[test]
fn partial_traces() {
    for d in 1..=5 {
        let c = ctx(d);
        let mut w = WCache { ctx: &c, rows: HashMap::new() };
        for k in 2..=4.min(d) {
            let f = ExactScalar::int((d - k + 1) as i64);
            for i in tuples(d, k - 1) {
                for j in tuples(d, k - 1) {
                    let rhs = &f * &w.get(&i, &j);
                    let mut last = ExactScalar::zero();
                    let mut first = ExactScalar::zero();
                    for s in 1..=d {
                        let ui = [i.clone(), vec![s]].concat();
                        let uj = [j.clone(), vec![s]].concat();
                        last += &w.get(&ui, &uj);
                        let ui = [vec![s], i.clone()].concat();
                        let uj = [vec![s], j.clone()].concat();
                        first += &w.get(&ui, &uj);
                    }
                    assert_eq!(last, rhs, "D={d} {i:?} {j:?}");
                    assert_eq!(first, rhs, "D={d} {i:?} {j:?}");
                }
            }
        }
    }
}

#[test]
fn metric_contracts_epsilon() {
    for d in 1..=5 {
        let c = ctx(d);
        let det = ExactScalar::int(if (d / 2) % 2 == 1 { -1 } else { 1 });
        // det_q g = det g
        let mut detq = ExactScalar::zero();
        for i in (1..=d).permutations(d) {
            let g: i64 = i.iter().enumerate().map(|(r, &a)| metric(&c, r + 1, a)).product();
            if g != 0 {
                detq += &epsilon_q(&c, &i).unwrap().scale(&twistcalc::qphase::Coeff::int(g));
            }
        }
        assert_eq!(detq, det);
        for i in tuples(d, d) {
            let primed: Vec<usize> = i.iter().map(|&a| c.primed(a)).collect();
            let rev: Vec<usize> = i.iter().rev().copied().collect();
            let e = epsilon_q(&c, &i).unwrap();
            assert_eq!(epsilon_q(&c, &primed).unwrap(), &e * &det);
            assert_eq!(epsilon_qinv(&c, &i).unwrap(), &epsilon_q(&c, &rev).unwrap() * &det);
            // conj(eps_q^{i}) = eps_q^{i'_N ... i'_1}
            let pr: Vec<usize> = primed.iter().rev().copied().collect();
            assert_eq!(e.conj(), epsilon_q(&c, &pr).unwrap());
        }
    }
}

#[test]
fn hermitian_form_of_antisymmetrizer() {
    for d in 1..=5 {
        let c = ctx(d);
        for k in 1..=3.min(d) {
            for a in tuples(d, k) {
                for i in a.iter().copied().permutations(k) {
                    let lower: Vec<usize> = a.iter().rev().map(|&x| c.primed(x)).collect();
                    let irev: Vec<usize> = i.iter().rev().copied().collect();
                    let ip: Vec<usize> = i.iter().map(|&x| c.primed(x)).collect();
                    assert_eq!(antisym_w(&c, &irev, &lower).unwrap(), antisym_w(&c, &a, &ip).unwrap());
                }
            }
        }
    }
}

#[test]
fn hodge_defining_relation_and_properties() {
    for d in 1..=5 {
        let c = ctx(d);
        let v = Element::volume(&c);
        for k in 0..=d {
            let s = sign(k * (d - k));
            for a in basis(&c, k) {
                let sa = hodge_plane(&a).unwrap();
                assert_eq!(hodge_plane(&sa).unwrap(), a.scale(&s), "** D={d} {a}");
                assert_eq!(hodge_plane(&a.star()).unwrap(), sa.star(), "reality D={d} {a}");
                for b in basis(&c, k) {
                    let sb = hodge_plane(&b).unwrap();
                    let p = pairing_plane(&a, &b).unwrap();
                    assert_eq!(&a * &sb, &p * &v, "D={d} {a} {b}");
                    assert_eq!(&a * &sb, (&sa * &b).scale(&s));
                    assert_eq!(p, pairing_plane(&sa, &sb).unwrap());
                }
                for g in basis(&c, d - k) {
                    assert_eq!(pairing_plane(&sa, &g).unwrap(), pairing_plane(&(&a * &g), &v).unwrap());
                }
            }
        }
    }
}

#[test]
fn hodge_is_function_linear() {
    let c = ctx(5);
    let f = Element::monomial(&c, Monomial::new(vec![1, 2, 0, 1, 0], &[]));
    let h = Element::monomial(&c, Monomial::new(vec![0, 1, 1, 0, 1], &[]));
    for k in 0..=5 {
        for a in basis(&c, k) {
            let lhs = hodge_plane(&(&(&f * &a) * &h)).unwrap();
            let rhs = &(&f * &hodge_plane(&a).unwrap()) * &h;
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pairing_is_a_bimodule_pairing() {
    let c = ctx(5);
    let f = Element::monomial(&c, Monomial::new(vec![1, 1, 0, 0, 0], &[]));
    let h = Element::monomial(&c, Monomial::new(vec![0, 0, 1, 1, 0], &[]));
    for k in 1..=3 {
        for a in basis(&c, k) {
            for b in basis(&c, k) {
                let p = pairing_plane(&a, &b).unwrap();
                let lhs = pairing_plane(&(&f * &a), &(&b * &h)).unwrap();
                assert_eq!(lhs, &(&f * &p) * &h);
                let lhs = pairing_plane(&(&a * &f), &b).unwrap();
                assert_eq!(lhs, pairing_plane(&a, &(&f * &b)).unwrap());
            }
        }
    }
}

#[test]
fn commutative_two_plane_hodge() {
    let c: Ctx = Arc::new(DeformationContext::commutative(2).unwrap());
    let dx1 = Element::dx(&c, 1).unwrap();
    let dx2 = Element::dx(&c, 2).unwrap();
    let v = Element::volume(&c);
    // solve a ^ *b = <a,b> V on the basis {dx1, dx2} with *dx1 = u dx1 + w dx2
    let star1 = hodge_plane(&dx1).unwrap();
    let u = star1.coefficient(&Monomial::new(vec![0, 0], &[1]));
    let w = star1.coefficient(&Monomial::new(vec![0, 0], &[2]));
    // dx1 ^ *dx1 = w dx1dx2 = <dx1,dx1> V = 0, dx2 ^ *dx1 = -u dx1dx2 = <dx2,dx1> i dx1dx2 = i dx1dx2
    assert!(w.is_zero());
    assert_eq!(u, -ExactScalar::i());
    assert_eq!(&dx2 * &star1, v);
    assert_eq!(pairing_plane(&dx2, &dx1).unwrap(), Element::one(&c));
}
