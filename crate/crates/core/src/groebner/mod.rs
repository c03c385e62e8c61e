//! Division, Buchberger's algorithm, and elimination.

mod staircase;

pub use staircase::{corner_monomials, Staircase};

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::algebra::{Coeff, Exponents, Monomial, Polynomial, RingRef};
use crate::error::{Error, Result};
use crate::order::is_elimination_for;

/// Rewrites the largest term of `f` divisible by `LT(g)`, or returns `None`
/// when no term is.
pub fn one_step_reduce<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Option<Polynomial<C>> {
    let lt = g.leading_term()?;
    let t = f.terms().iter().find(|t| lt.mono.divides(&t.mono))?;
    let q = t.exp().checked_div(lt.exp()).expect("divisible");
    let c = t.coeff.over(&lt.coeff);
    Some(f.minus(&g.mul_term(&q, &c)))
}

/// Full reduction of `f` by `divisors`, largest terms first, trying divisors
/// in the given order.
pub fn reduce<C: Coeff>(f: &Polynomial<C>, divisors: &[Polynomial<C>]) -> Polynomial<C> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rest = Vec::new();
    while let Some(head) = p.leading_term().cloned() {
        let divisor = divisors
            .iter()
            .filter_map(|g| g.leading_term().map(|lt| (g, lt)))
            .find(|(_, lt)| lt.mono.divides(&head.mono));
        match divisor {
            Some((g, lt)) => {
                let q = head.exp().checked_div(lt.exp()).expect("divisible");
                p = p.minus(&g.mul_term(&q, &head.coeff.over(&lt.coeff)));
            }
            None => {
                // the head is final; drop it from p without re-sorting
                let tail: Vec<_> = p.terms()[1..].to_vec();
                rest.push(head);
                p = Polynomial::from_sorted(ring.clone(), tail);
            }
        }
    }
    Polynomial::from_sorted(ring, rest)
}

/// The S-polynomial of `f` and `g`; zero when their leading terms sit in
/// different positions.
pub fn s_polynomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let (Some(a), Some(b)) = (f.leading_term(), g.leading_term()) else {
        return Polynomial::zero(f.ring());
    };
    if a.pos() != b.pos() {
        return Polynomial::zero(f.ring());
    }
    let l = a.exp().lcm(b.exp());
    let fa = f.mul_term(&l.checked_div(a.exp()).unwrap(), &a.coeff.recip());
    let gb = g.mul_term(&l.checked_div(b.exp()).unwrap(), &b.coeff.recip());
    fa.minus(&gb)
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by leading term
/// in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<C: Coeff> {
    ring: RingRef<C>,
    elements: Vec<Polynomial<C>>,
}

impl<C: Coeff> GroebnerBasis<C> {
    /// Runs Buchberger's algorithm on `gens`, which must share one ring.
    pub fn compute(ring: &RingRef<C>, gens: &[Polynomial<C>]) -> Result<Self> {
        for g in gens {
            if !g.ring().compatible(ring) || g.ring().rank() != ring.rank() {
                return Err(Error::RingMismatch("generators live in different rings".into()));
            }
        }
        let elements = buchberger(ring, gens);
        Ok(GroebnerBasis {
            ring: ring.clone(),
            elements,
        })
    }

    /// Wraps elements that are already a reduced basis.
    pub fn from_reduced(ring: &RingRef<C>, elements: Vec<Polynomial<C>>) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            elements,
        }
    }

    pub fn ring(&self) -> &RingRef<C> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<C>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_term().map(|t| t.mono.clone()))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        reduce(f, &self.elements)
    }

    pub fn is_member(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether the monomial lies in the leading-term module.
    pub fn is_leading(&self, m: &Monomial) -> bool {
        self.elements
            .iter()
            .any(|g| g.leading_term().is_some_and(|t| t.mono.divides(m)))
    }

    /// Whether the ideal or module is the whole ring.
    pub fn is_unit(&self) -> bool {
        (0..self.ring.rank()).all(|k| self.is_leading(&Monomial::new(k, Exponents::zero(self.ring.nvars()))))
    }

    pub fn staircase(&self) -> Result<Staircase> {
        Staircase::of(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair(usize, usize);

fn lcm_monomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Option<Monomial> {
    let (a, b) = (f.leading_term()?, g.leading_term()?);
    (a.pos() == b.pos()).then(|| Monomial::new(a.pos(), a.exp().lcm(b.exp())))
}

fn buchberger<C: Coeff>(ring: &RingRef<C>, gens: &[Polynomial<C>]) -> Vec<Polynomial<C>> {
    let mut basis: Vec<Polynomial<C>> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    let scalar = ring.rank() == 1;

    let add = |basis: &mut Vec<Polynomial<C>>, pending: &mut BTreeSet<Pair>, g: Polynomial<C>| {
        let j = basis.len();
        basis.push(g.monic());
        for i in 0..j {
            if lcm_monomial(&basis[i], &basis[j]).is_some() {
                pending.insert(Pair(i, j));
            }
        }
    };

    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }

    while !pending.is_empty() {
        // normal strategy: the pair with the smallest lcm
        let order = &ring.order;
        let pick = *pending
            .iter()
            .min_by(|p, q| {
                let lp = lcm_monomial(&basis[p.0], &basis[p.1]).unwrap();
                let lq = lcm_monomial(&basis[q.0], &basis[q.1]).unwrap();
                order.compare(&lp, &lq).then_with(|| p.cmp(q))
            })
            .unwrap();
        pending.remove(&pick);
        let Pair(i, j) = pick;
        let (li, lj) = (basis[i].leading_term().unwrap(), basis[j].leading_term().unwrap());
        if scalar && li.exp().is_coprime(lj.exp()) {
            continue;
        }
        let l = lcm_monomial(&basis[i], &basis[j]).unwrap();
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_term().is_some_and(|t| t.mono.divides(&l))
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }
    interreduce(ring, basis)
}

fn ordered(a: usize, b: usize) -> Pair {
    if a < b {
        Pair(a, b)
    } else {
        Pair(b, a)
    }
}

/// Minimalizes, tail-reduces, normalizes, and sorts a Gröbner basis.
fn interreduce<C: Coeff>(ring: &RingRef<C>, basis: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let order = &ring.order;
    let mut minimal: Vec<Polynomial<C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lt = &g.leading_term().unwrap().mono;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hl = &h.leading_term().unwrap().mono;
            k != i && hl.divides(lt) && (hl != lt || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.compare(&b.leading_term().unwrap().mono, &a.leading_term().unwrap().mono));
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let head = minimal[i].leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted(ring.clone(), minimal[i].terms()[1..].to_vec());
        let others: Vec<Polynomial<C>> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let tail = reduce(&tail, &others);
        let mut terms = vec![head];
        terms.extend(tail.into_terms());
        out.push(Polynomial::from_sorted(ring.clone(), terms).monic());
    }
    debug_assert!(out.windows(2).all(|w| order
        .compare(&w[0].leading_term().unwrap().mono, &w[1].leading_term().unwrap().mono)
        == Ordering::Greater));
    out
}

/// Gröbner basis of the contraction of `⟨gens⟩` to the parameter variables.
/// The returned polynomials involve parameters only.
pub fn eliminate<C: Coeff>(ring: &RingRef<C>, gens: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>> {
    if !is_elimination_for(ring.term_order(), &ring.desc) {
        return Err(Error::NotElimination(ring.term_order().name()));
    }
    let x = ring.desc.x_count();
    let gb = GroebnerBasis::compute(ring, gens)?;
    Ok(gb
        .elements()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|t| t.exp().as_slice()[..x].iter().all(|&e| e == 0))
        })
        .cloned()
        .collect())
}
