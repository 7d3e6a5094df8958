use std::sync::Arc;

use proptest::prelude::*;
use twistcalc::expr::parse_expr;
use twistcalc::haar::Haar;
use twistcalc::ncalg::{Ctx, Element, Generator};
use twistcalc::qphase::{rat, Coeff, DeformationContext, ExactScalar, PhaseMonomial};
use twistcalc::sphere::{in_ideal, integrate};

fn ctx(d: usize) -> Ctx {
    Arc::new(DeformationContext::new(d).unwrap())
}

fn coeff() -> impl Strategy<Value = Coeff> {
    prop::array::uniform4(-3i64..=3).prop_map(|[a, b, c, d]| Coeff::new(rat(a, 1), rat(b, 2), rat(c, 1), rat(d, 3)))
}

fn scalar(params: usize) -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((coeff(), prop::collection::vec(-3i32..=3, params)), 1..3).prop_map(|terms| {
        let mut s = ExactScalar::zero();
        for (c, e) in terms {
            s.add_term(PhaseMonomial::from_exponents(e), c);
        }
        s
    })
}

fn generator(d: usize, forms: bool) -> BoxedStrategy<Generator> {
    if forms {
        prop_oneof![(1..=d).prop_map(Generator::X), (1..=d).prop_map(Generator::Dx)].boxed()
    } else {
        (1..=d).prop_map(Generator::X).boxed()
    }
}

fn word(d: usize, forms: bool) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(d, forms), 0..4)
}

fn element(c: &Ctx, forms: bool) -> impl Strategy<Value = Element> {
    let c = c.clone();
    let d = c.dim();
    prop::collection::vec((scalar(c.num_params()), word(d, forms)), 0..3).prop_map(move |terms| {
        let mut e = Element::zero(&c);
        for (s, w) in terms {
            e = &e + &Element::normal_order(&c, &w).unwrap().scale(&s);
        }
        e
    })
}

fn with_ctx(forms: bool) -> impl Strategy<Value = (Ctx, Element, Element, Element)> {
    (2usize..=5).prop_flat_map(move |d| {
        let c = ctx(d);
        (Just(c.clone()), element(&c, forms), element(&c, forms), element(&c, forms))
    })
}

fn sign(k: usize) -> ExactScalar {
    ExactScalar::int(if k.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_form_a_field(x in scalar(3), y in scalar(3), z in scalar(3), c in coeff()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        if let Some(inv) = c.inverse() {
            prop_assert!((&c * &inv).is_one());
        }
    }

    #[test]
    fn ring_axioms((c, a, b, e) in with_ctx(true)) {
        prop_assert_eq!(&(&a * &b) * &e, &a * &(&b * &e));
        prop_assert_eq!(&a * &(&b + &e), &(&a * &b) + &(&a * &e));
        prop_assert_eq!(&(&a + &b) * &e, &(&a * &e) + &(&b * &e));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&Element::one(&c) * &a, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normal_order_is_confluent(d in 2usize..=6, w1 in word(6, true), w2 in word(6, true)) {
        let c = ctx(d);
        let clip = |w: &[Generator]| -> Vec<Generator> {
            w.iter().map(|g| match *g {
                Generator::X(a) => Generator::X((a - 1) % d + 1),
                Generator::Dx(a) => Generator::Dx((a - 1) % d + 1),
            }).collect()
        };
        let (u, v) = (clip(&w1), clip(&w2));
        let joined = Element::normal_order(&c, &[u.clone(), v.clone()].concat()).unwrap();
        let split = &Element::normal_order(&c, &u).unwrap() * &Element::normal_order(&c, &v).unwrap();
        prop_assert_eq!(joined, split);
    }

    #[test]
    fn exterior_derivative((_c, a, b, _e) in with_ctx(true)) {
        prop_assert!(a.d().d().is_zero());
        for k in 0..=a.dim() {
            let ak = a.part(k);
            let lhs = (&ak * &b).d();
            let rhs = &(&ak.d() * &b) + &(&ak * &b.d()).scale(&sign(k));
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(a.star().d(), a.d().star());
    }

    #[test]
    fn star_is_an_antimultiplicative_involution((_c, a, b, _e) in with_ctx(true), s in scalar(1)) {
        prop_assert_eq!(a.star().star(), a.clone());
        let s = ExactScalar::from_coeff(s.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Coeff::one));
        prop_assert_eq!(a.scale(&s).star(), a.star().scale(&s.conj()));
        for k in 0..=a.dim() {
            for l in 0..=a.dim() {
                let (ak, bl) = (a.part(k), b.part(l));
                prop_assert_eq!((&ak * &bl).star(), (&bl.star() * &ak.star()).scale(&sign(k * l)));
            }
        }
    }

    #[test]
    fn print_then_parse((c, a, _b, _e) in with_ctx(true)) {
        let text = a.to_string();
        prop_assert_eq!(parse_expr(&c, &text).unwrap(), a.clone());
    }

    #[test]
    fn haar_is_a_twisted_trace((c, f, g, _e) in with_ctx(false)) {
        prop_assume!(c.dim() >= 3);
        let mut h = Haar::new(&c);
        prop_assert_eq!(h.eval(&(&f * &g)).unwrap(), h.eval(&(&g * &f)).unwrap());
        prop_assert_eq!(h.eval(&f).unwrap().conj(), h.eval(&f.star()).unwrap());
        let cm1 = &Element::c(&c) - &Element::one(&c);
        prop_assert!(h.eval(&(&cm1 * &f)).unwrap().is_zero());
    }

    #[test]
    fn sphere_ideal_and_integral((c, a, b, w) in with_ctx(true)) {
        prop_assume!(c.dim() >= 3);
        let n = c.dim() - 1;
        let cm1 = &Element::c(&c) - &Element::one(&c);
        let member = &(&cm1 * &a) + &(&Element::dc(&c) * &b);
        prop_assert!(in_ideal(&member));
        prop_assert!(in_ideal(&member.d()));
        let top = w.part(n);
        let moved = &(&top + &(&cm1 * &a.part(n))) + &(&Element::dc(&c) * &b.part(n - 1));
        prop_assert_eq!(integrate(&top).unwrap(), integrate(&moved).unwrap());
    }
}
