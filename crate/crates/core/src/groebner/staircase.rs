use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use super::GroebnerBasis;
use crate::algebra::{Coeff, Exponents, Monomial};
use crate::error::{Error, Result};
use crate::order::ModuleOrder;

/// The module terms outside the leading-term module of a basis.
///
/// Stored in ascending degree, and descending under the ring order within a
/// degree, so `1, x, y, xy` for the parabola.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    monomials: Vec<Monomial>,
    nvars: usize,
}

impl Staircase {
    pub fn of<C: Coeff>(gb: &GroebnerBasis<C>) -> Result<Self> {
        let ring = gb.ring();
        let n = ring.nvars();
        let lts = gb.leading_monomials();
        for k in 0..ring.rank() {
            let killed = lts.iter().any(|m| m.pos == k && m.exp.is_one());
            if killed {
                continue;
            }
            for v in 0..n {
                let bounded = lts.iter().any(|m| m.pos == k && m.exp.pure_power_var() == Some(v));
                if !bounded {
                    return Err(Error::InfiniteStaircase);
                }
            }
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut queue: VecDeque<Monomial> = VecDeque::new();
        for k in 0..ring.rank() {
            let m = Monomial::new(k, Exponents::zero(n));
            if !gb.is_leading(&m) && seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
        while let Some(m) = queue.pop_front() {
            for v in 0..n {
                let next = m.times(&Exponents::unit(n, v));
                if !seen.contains(&next) && !gb.is_leading(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut monomials: Vec<Monomial> = seen.into_iter().collect();
        sort_staircase(&mut monomials, &ring.order);
        Ok(Staircase { monomials, nvars: n })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn multiplicity(&self) -> usize {
        self.monomials.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m)
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }
}

/// Ascending degree, then descending under `order`.
pub(crate) fn sort_staircase(ms: &mut [Monomial], order: &ModuleOrder) {
    ms.sort_by(|a, b| match a.degree().cmp(&b.degree()) {
        Ordering::Equal => order.compare(b, a),
        other => other,
    });
}

/// Staircase elements `m` with `x_v * m` leading for every variable `v`.
pub fn corner_monomials<C: Coeff>(staircase: &Staircase, gb: &GroebnerBasis<C>) -> Vec<Monomial> {
    let n = staircase.nvars;
    staircase
        .monomials
        .iter()
        .filter(|m| (0..n).all(|v| gb.is_leading(&m.times(&Exponents::unit(n, v)))))
        .cloned()
        .collect()
}
