//! Seeded generators of random elements, used by the invariant suites.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalg::{Ctx, Element, Monomial};
use crate::qphase::{rat, Coeff, ExactScalar, PhaseMonomial};

pub struct RandomElements {
    ctx: Ctx,
    rng: ChaCha8Rng,
}

impl RandomElements {
    pub fn new(ctx: &Ctx, seed: u64) -> Self {
        RandomElements { ctx: ctx.clone(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero coefficient in Q(i, sqrt2) times a small phase.
    pub fn scalar(&mut self) -> ExactScalar {
        let r = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.5) {
                rat(0, 1)
            } else {
                rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            }
        };
        let mut c = Coeff::new(r(&mut self.rng), r(&mut self.rng), r(&mut self.rng), r(&mut self.rng));
        if c.is_zero() {
            c = Coeff::one();
        }
        let np = self.ctx.num_params();
        let exps: Vec<i32> = (0..np).map(|_| self.rng.gen_range(-2..=2)).collect();
        ExactScalar::term(c, PhaseMonomial::from_exponents(exps))
    }

    /// A monomial of x-degree exactly `deg` with differentials `dx`.
    pub fn monomial(&mut self, deg: u32, dx: &[usize]) -> Monomial {
        let d = self.ctx.dim();
        let mut x = vec![0; d];
        for _ in 0..deg {
            x[self.rng.gen_range(0..d)] += 1;
        }
        Monomial::new(x, dx)
    }

    /// The product of a random word of `deg` coordinates, in that order.
    pub fn coordinate_word(&mut self, deg: u32) -> Element {
        let d = self.ctx.dim();
        let mut acc = Element::one(&self.ctx);
        for _ in 0..deg {
            let a = self.rng.gen_range(1..=d);
            acc = &acc * &Element::x(&self.ctx, a).expect("index in range");
        }
        acc
    }

    /// A random function with up to `terms` monomials of x-degree at most `max_deg`.
    pub fn function(&mut self, terms: usize, max_deg: u32) -> Element {
        self.form(0, terms, max_deg)
    }

    /// A random homogeneous `k`-form.
    pub fn form(&mut self, k: usize, terms: usize, max_deg: u32) -> Element {
        let d = self.ctx.dim();
        let subsets: Vec<Vec<usize>> = (1..=d).combinations(k).collect();
        let mut out = Element::zero(&self.ctx);
        for _ in 0..terms.max(1) {
            let deg = self.rng.gen_range(0..=max_deg);
            let dx = subsets.choose(&mut self.rng).expect("k <= D").clone();
            let m = self.monomial(deg, &dx);
            let s = self.scalar();
            out.add_term(m, s);
        }
        out
    }

    pub fn gen_range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }
}
