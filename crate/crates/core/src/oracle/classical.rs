//! Exact classical data on the round sphere in the complex coordinates
//! `x^a = (u_a + i v_a)/sqrt2`, `x^a' = conj(x^a)` and the real middle coordinate.

use itertools::Itertools;
use num::{BigInt, One};

use crate::qphase::{Coeff, Rational};

fn rat(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// `(m - 1)!!` for even `m`.
fn odd_double_factorial(m: u32) -> BigInt {
    (1..m).step_by(2).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Average of the commutative monomial `prod_a (x^a)^{alpha_a}` over the unit sphere in `R^D`.
pub fn sphere_moment(alpha: &[u32]) -> Coeff {
    let d = alpha.len();
    let total: u32 = alpha.iter().sum();
    if total % 2 == 1 {
        return Coeff::zero();
    }
    let mut acc = Coeff::one();
    for a in 0..d / 2 {
        let (p, r) = (alpha[a], alpha[d - 1 - a]);
        if (p + r) % 2 == 1 {
            return Coeff::zero();
        }
        // ((u + iv)^p (u - iv)^r) / 2^{(p+r)/2}
        let mut s = Coeff::zero();
        for j in 0..=p {
            for l in 0..=r {
                let (mu, mv) = (p - j + r - l, j + l);
                if mu % 2 == 1 || mv % 2 == 1 {
                    continue;
                }
                let w = binom(p, j) * binom(r, l) * odd_double_factorial(mu) * odd_double_factorial(mv);
                s = &s + &Coeff::i_pow(j as i64 - l as i64).scale(&Rational::from_integer(w));
            }
        }
        acc = &acc * &s.scale(&rat(BigInt::one(), BigInt::from(2u32).pow((p + r) / 2)));
    }
    if d % 2 == 1 {
        let m = alpha[d / 2];
        if m % 2 == 1 {
            return Coeff::zero();
        }
        acc = acc.scale(&Rational::from_integer(odd_double_factorial(m)));
    }
    let denom = (0..total / 2).fold(BigInt::one(), |acc, t| acc * BigInt::from(d as u32 + 2 * t));
    acc.scale(&rat(BigInt::one(), denom))
}

/// `det[g^{i_a j_b}]` for the anti-diagonal metric `g^{ab} = [b = D + 1 - a]`.
pub fn classical_pairing(dim: usize, i: &[usize], j: &[usize]) -> i64 {
    let k = i.len();
    if j.len() != k {
        return 0;
    }
    let mut total = 0;
    for perm in (0..k).permutations(k) {
        if perm.iter().enumerate().all(|(a, &b)| j[b] == dim + 1 - i[a]) {
            total += permutation_sign(&perm);
        }
    }
    total
}

/// Sign of a permutation of `0..n` given in one-line notation.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// Sign taking the concatenation of two disjoint sorted index lists to sorted order.
pub fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut s = 1;
    for x in a {
        for y in b {
            if x > y {
                s = -s;
            }
        }
    }
    s
}

/// Classical Hodge star of the coframe form `dx^J` (sorted `J`), with volume `i^[D/2] dx^1...dx^D`.
pub fn classical_hodge_basis(dim: usize, j: &[usize]) -> Vec<(Vec<usize>, Coeff)> {
    let k = j.len();
    let vol = Coeff::i_pow((dim / 2) as i64);
    let mut out = Vec::new();
    for i in (1..=dim).combinations(k) {
        let g = classical_pairing(dim, &i, j);
        if g == 0 {
            continue;
        }
        let comp: Vec<usize> = (1..=dim).filter(|a| !i.contains(a)).collect();
        let s = shuffle_sign(&i, &comp);
        out.push((comp, vol.scale(&Rational::from_integer(BigInt::from(g * s)))));
    }
    out
}
