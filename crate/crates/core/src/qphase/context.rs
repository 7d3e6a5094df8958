use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::qphase::PhaseMonomial;

/// Largest ambient dimension supported; differential sets are stored as bit masks.
pub const MAX_DIM: usize = 16;

/// The number of ambient generators together with the canonical table of
/// commutation phases `q_ab` expressed in the independent parameters
/// `{(a,b) : a < b <= D/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationContext {
    dim: usize,
    params: Vec<(usize, usize)>,
    table: Vec<PhaseMonomial>,
}

impl DeformationContext {
    /// Twisted context: every pair `a < b <= D/2` is a free unit-modulus parameter.
    pub fn new(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        let half = dim / 2;
        let params: Vec<(usize, usize)> = (1..=half).flat_map(|a| (a + 1..=half).map(move |b| (a, b))).collect();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 1..=dim {
            for b in 1..=dim {
                table.push(orbit_reduce(dim, &params, a, b));
            }
        }
        Ok(DeformationContext { dim, params, table })
    }

    /// Commutative limit: all phases forced to 1.
    pub fn commutative(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(DeformationContext { dim, params: Vec::new(), table: vec![PhaseMonomial::one(); dim * dim] })
    }

    fn check_dim(dim: usize) -> Result<()> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Independent parameters, in the order used by [`PhaseMonomial`] exponents.
    pub fn params(&self) -> &[(usize, usize)] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    pub fn is_commutative(&self) -> bool {
        self.params.is_empty()
    }

    /// `a' = D + 1 - a`.
    pub fn primed(&self, a: usize) -> usize {
        self.dim + 1 - a
    }

    /// The middle index `m = m'`, present only for odd `D`.
    pub fn middle(&self) -> Option<usize> {
        (self.dim % 2 == 1).then_some(self.dim / 2 + 1)
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.dim {
            return Err(Error::IndexOutOfRange { index: a, dim: self.dim });
        }
        Ok(())
    }

    /// Canonical phase monomial representing `q_ab`.
    pub fn reduce_pair(&self, a: usize, b: usize) -> Result<PhaseMonomial> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.q(a, b).clone())
    }

    /// Unchecked table lookup; callers guarantee `1 <= a, b <= D`.
    #[inline]
    pub(crate) fn q(&self, a: usize, b: usize) -> &PhaseMonomial {
        &self.table[(a - 1) * self.dim + (b - 1)]
    }
}

/// Breadth-first search over the moves (a,b)->(a',b') [same exponent],
/// (a,b)->(b,a) and (a,b)->(a,b') [negated exponent]. Returns the signed
/// generator of the first independent pair reached, or the unit when the
/// orbit contains a pair together with its own inverse.
fn orbit_reduce(dim: usize, params: &[(usize, usize)], a: usize, b: usize) -> PhaseMonomial {
    let primed = |x: usize| dim + 1 - x;
    let mut seen: HashMap<(usize, usize), i32> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((a, b), 1);
    queue.push_back(((a, b), 1));
    let mut hit: Option<PhaseMonomial> = None;
    while let Some(((x, y), s)) = queue.pop_front() {
        if hit.is_none() {
            if let Some(p) = params.iter().position(|&pq| pq == (x, y)) {
                hit = Some(PhaseMonomial::generator(p, s));
            }
        }
        for (next, ns) in [((primed(x), primed(y)), s), ((y, x), -s), ((x, primed(y)), -s)] {
            match seen.get(&next) {
                Some(&prev) if prev != ns => return PhaseMonomial::one(),
                Some(_) => {}
                None => {
                    seen.insert(next, ns);
                    queue.push_back((next, ns));
                }
            }
        }
    }
    hit.unwrap_or_default()
}
