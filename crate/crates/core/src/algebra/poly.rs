//! Sparse polynomials and module elements in canonical form.
//!
//! Terms are kept sorted in descending order under the ring's module
//! ordering, with no zero coefficients and no repeated module terms, so two
//! polynomials over the same ring are equal exactly when their term vectors
//! are.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::Coeff;
use super::monomial::{Exponents, Monomial};
use super::rational::Rational;
use super::ring::RingRef;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub mono: Monomial,
    pub coeff: C,
}

impl<C> Term<C> {
    pub fn new(pos: usize, exp: Exponents, coeff: C) -> Self {
        Term {
            mono: Monomial::new(pos, exp),
            coeff,
        }
    }

    pub fn pos(&self) -> usize {
        self.mono.pos
    }

    pub fn exp(&self) -> &Exponents {
        &self.mono.exp
    }
}

#[derive(Clone)]
pub struct Polynomial<C: Coeff> {
    ring: RingRef<C>,
    terms: Vec<Term<C>>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<C: Coeff> Polynomial<C> {
    /// Builds the canonical form of an arbitrary term list.
    pub fn new(ring: RingRef<C>, terms: Vec<Term<C>>) -> Result<Self> {
        for t in &terms {
            if t.mono.exp.len() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    expected: ring.nvars(),
                    got: t.mono.exp.len(),
                });
            }
            if t.mono.pos >= ring.rank() {
                return Err(Error::RingMismatch(format!(
                    "position {} outside rank {}",
                    t.mono.pos + 1,
                    ring.rank()
                )));
            }
        }
        Ok(Self::from_terms(ring, terms))
    }

    /// Canonicalizes without validating term shapes.
    pub(crate) fn from_terms(ring: RingRef<C>, terms: Vec<Term<C>>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(terms.len());
        for t in terms {
            match acc.get_mut(&t.mono) {
                Some(c) => *c = c.plus(&t.coeff),
                None => {
                    acc.insert(t.mono, t.coeff);
                }
            }
        }
        let mut terms: Vec<Term<C>> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { mono, coeff })
            .collect();
        let order = &ring.order;
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        Polynomial { ring, terms }
    }

    /// Wraps a term list that is already canonical.
    pub(crate) fn from_sorted(ring: RingRef<C>, terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring, terms }
    }

    pub fn zero(ring: &RingRef<C>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef<C>, c: C) -> Self {
        Self::monomial(ring, Monomial::new(0, Exponents::zero(ring.nvars())), c)
    }

    pub fn one(ring: &RingRef<C>) -> Self {
        Self::constant(ring, C::one(&ring.ctx))
    }

    pub fn monomial(ring: &RingRef<C>, mono: Monomial, c: C) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term { mono, coeff: c }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef<C>, index: usize) -> Self {
        Self::monomial(
            ring,
            Monomial::new(0, Exponents::unit(ring.nvars(), index)),
            C::one(&ring.ctx),
        )
    }

    /// The canonical basis vector `e_pos` (0-based).
    pub fn basis_vector(ring: &RingRef<C>, pos: usize) -> Self {
        Self::monomial(
            ring,
            Monomial::new(pos, Exponents::zero(ring.nvars())),
            C::one(&ring.ctx),
        )
    }

    pub fn ring(&self) -> &RingRef<C> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.exp.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest term under the ring's ordering.
    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    /// Smallest term under the ring's ordering, coefficient included.
    pub fn smallest_term(&self) -> Option<&Term<C>> {
        self.terms.last()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, mono: &Monomial) -> C {
        self.terms
            .iter()
            .find(|t| &t.mono == mono)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| C::zero(&self.ring.ctx))
    }

    /// Largest module position that carries a term, if any.
    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.mono.pos).max()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.compatible(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.desc.names(),
                other.ring.desc.names()
            )))
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        if self.ring.rank() != other.ring.rank() {
            return Err(Error::RingMismatch(format!(
                "rank {} vs rank {}",
                self.ring.rank(),
                other.ring.rank()
            )));
        }
        Ok(())
    }

    /// Merges two sorted term lists, combining `self + factor * other`.
    fn merge(&self, other: &[Term<C>], negate_other: bool) -> Vec<Term<C>> {
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        while i < a.len() && j < other.len() {
            match order.compare(&a[i].mono, &other[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        other[j].coeff.negate()
                    } else {
                        other[j].coeff.clone()
                    };
                    out.push(Term {
                        mono: other[j].mono.clone(),
                        coeff: c,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        a[i].coeff.minus(&other[j].coeff)
                    } else {
                        a[i].coeff.plus(&other[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &other[j..] {
            let c = if negate_other {
                t.coeff.negate()
            } else {
                t.coeff.clone()
            };
            out.push(Term {
                mono: t.mono.clone(),
                coeff: c,
            });
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Polynomial::from_sorted(
            self.ring.clone(),
            self.merge(&other.terms, false),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Polynomial::from_sorted(
            self.ring.clone(),
            self.merge(&other.terms, true),
        ))
    }

    /// `self + other`, for callers that already know the rings agree.
    pub(crate) fn plus(&self, other: &Self) -> Self {
        Polynomial::from_sorted(self.ring.clone(), self.merge(&other.terms, false))
    }

    /// `self - other`, for callers that already know the rings agree.
    pub(crate) fn minus(&self, other: &Self) -> Self {
        Polynomial::from_sorted(self.ring.clone(), self.merge(&other.terms, true))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: t.coeff.negate(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: t.coeff.times(c),
                })
                .collect(),
        }
    }

    /// Multiplies by `c * x^e`. Term order is preserved by multiplicativity.
    pub fn mul_term(&self, e: &Exponents, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.times(e),
                    coeff: t.coeff.times(c),
                })
                .collect(),
        }
    }

    /// Product of two polynomials, at most one of which is a module element.
    ///
    /// A rank-1 ring is compatible with a rank-`s` ring over the same
    /// variables; the product lives in the larger one.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (scalar, vector) = match (self.ring.rank() > 1, other.ring.rank() > 1) {
            (true, true) => return Err(Error::BothModules),
            (true, false) => (other, self),
            _ => (self, other),
        };
        if scalar.terms.iter().any(|t| t.mono.pos != 0) {
            return Err(Error::BothModules);
        }
        let mut terms = Vec::with_capacity(scalar.terms.len() * vector.terms.len());
        for s in &scalar.terms {
            for v in &vector.terms {
                terms.push(Term {
                    mono: v.mono.times(&s.mono.exp),
                    coeff: s.coeff.times(&v.coeff),
                });
            }
        }
        Ok(Polynomial::from_terms(vector.ring.clone(), terms))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring.with_rank(1));
        if self.ring.rank() > 1 && e > 1 {
            return Err(Error::BothModules);
        }
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Re-sorts the terms into another ring over the same variables.
    pub fn change_ring(&self, ring: &RingRef<C>) -> Result<Self> {
        if ring.desc.names() != self.ring.desc.names() {
            return Err(Error::RingMismatch("variable names differ".into()));
        }
        if let Some(p) = self.max_position() {
            if p >= ring.rank() {
                return Err(Error::RingMismatch(format!(
                    "position {} outside rank {}",
                    p + 1,
                    ring.rank()
                )));
            }
        }
        Ok(Polynomial::from_terms(ring.clone(), self.terms.clone()))
    }

    /// Component `pos` as a rank-1 polynomial.
    pub fn component(&self, pos: usize) -> Self {
        let ring = self.ring.with_rank(1);
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.pos == pos)
            .map(|t| Term::new(0, t.mono.exp.clone(), t.coeff.clone()))
            .collect();
        Polynomial::from_sorted(ring, terms)
    }

    /// Embeds a rank-1 polynomial as position `pos` of a rank-`rank` vector.
    pub fn embed(&self, ring: &RingRef<C>, pos: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(pos, t.mono.exp.clone(), t.coeff.clone()))
            .collect();
        Polynomial::from_terms(ring.clone(), terms)
    }

    pub fn map_coeffs<D: Coeff>(&self, ring: &RingRef<D>, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.clone(),
                coeff: f(&t.coeff),
            })
            .collect();
        Polynomial::from_terms(ring.clone(), terms)
    }

    /// Replaces every variable `v_i` by `v_i + point[i]`.
    pub fn substitute_affine(&self, point: &[Rational]) -> Result<Self> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: point.len(),
            });
        }
        if point.iter().all(num_traits::Zero::is_zero) {
            return Ok(self.clone());
        }
        let scalar_ring = self.ring.with_rank(1);
        let ctx = &self.ring.ctx;
        let shifted: Vec<Polynomial<C>> = (0..n)
            .map(|i| {
                Polynomial::var(&scalar_ring, i)
                    .plus(&Polynomial::constant(&scalar_ring, C::from_rational(&point[i], ctx)))
            })
            .collect();
        // powers[i][k] = (v_i + p_i)^k, filled on demand
        let mut powers: Vec<Vec<Polynomial<C>>> = (0..n).map(|_| vec![Polynomial::one(&scalar_ring)]).collect();
        let mut terms = Vec::new();
        for t in &self.terms {
            let mut prod = Polynomial::constant(&scalar_ring, t.coeff.clone());
            for (i, &e) in t.mono.exp.as_slice().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&shifted[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    prod = prod.mul(&powers[i][e as usize])?;
                }
            }
            terms.extend(
                prod.terms
                    .into_iter()
                    .map(|s| Term::new(t.mono.pos, s.mono.exp, s.coeff)),
            );
        }
        Ok(Polynomial::from_terms(self.ring.clone(), terms))
    }

    /// Value at a rational point, one entry per module position.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let mut out = vec![Rational::from_integer(0.into()); self.ring.rank()];
        for t in &self.terms {
            let c = t.coeff.as_rational().ok_or(Error::RationalFunctionCoefficients)?;
            let mut v = c;
            for (i, &e) in t.mono.exp.as_slice().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            out[t.mono.pos] += v;
        }
        Ok(out)
    }

    /// Divides every term by `x^e`, dropping terms not divisible by it.
    pub fn shift_down(&self, e: &Exponents) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                t.mono.exp.checked_div(e).map(|q| Term {
                    mono: Monomial::new(t.mono.pos, q),
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        // division by a monomial is order preserving on the surviving terms
        Polynomial::from_sorted(self.ring.clone(), terms)
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.desc.names();
        if self.ring.rank() == 1 {
            f.write_str(&render_terms(&self.terms, names))
        } else {
            let parts: Vec<String> = (0..self.ring.rank())
                .map(|p| {
                    let terms: Vec<Term<C>> = self.terms.iter().filter(|t| t.mono.pos == p).cloned().collect();
                    render_terms(&terms, names)
                })
                .collect();
            write!(f, "[{}]", parts.join(", "))
        }
    }
}

/// Renders `x^2*y` style power products; empty string for 1.
pub fn render_power_product(exp: &Exponents, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exp.as_slice().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

fn render_terms<C: Coeff>(terms: &[Term<C>], names: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = if neg { t.coeff.negate() } else { t.coeff.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let pp = render_power_product(&t.mono.exp, names);
        if pp.is_empty() {
            out.push_str(&mag.render_factor());
        } else if mag.is_one() {
            out.push_str(&pp);
        } else {
            out.push_str(&mag.render_factor());
            out.push('*');
            out.push_str(&pp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};
    use crate::algebra::ring::{PolyRing, RingDescriptor};
    use crate::order::TermOrder;

    fn ring(names: &[&str], ord: TermOrder) -> RingRef<Rational> {
        PolyRing::rational(RingDescriptor::plain(names, 1).unwrap(), ord).unwrap()
    }

    fn p(r: &RingRef<Rational>, terms: &[(i64, &[u32])]) -> Polynomial<Rational> {
        Polynomial::new(
            r.clone(),
            terms
                .iter()
                .map(|(c, e)| Term::new(0, Exponents::new(e.to_vec()), rat(*c)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = ring(&["x", "y"], TermOrder::DegLex);
        let f = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let g = p(&r, &[(1, &[0, 1])]);
        assert_eq!(f.add(&g).unwrap(), p(&r, &[(1, &[2, 0])]));
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
    }

    #[test]
    fn addition_merges_like_terms() {
        let r = ring(&["x", "y"], TermOrder::DegLex);
        let a = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
        // independent accumulation over a map
        let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
        for t in a.terms().iter().chain(b.terms()) {
            *acc.entry(t.exp().as_slice().to_vec()).or_insert_with(|| rat(0)) += &t.coeff;
        }
        acc.retain(|_, c| !num_traits::Zero::is_zero(c));
        assert_eq!(acc.len(), 1);
        assert_eq!(acc[&vec![1, 0]], rat(2));
        assert_eq!(a.add(&b).unwrap(), p(&r, &[(2, &[1, 0])]));
    }

    #[test]
    fn multiplication() {
        let r = ring(&["x", "y"], TermOrder::DegLex);
        let x = Polynomial::var(&r, 0);
        let x2 = p(&r, &[(1, &[2, 0])]);
        assert_eq!(x.mul(&x2).unwrap(), p(&r, &[(1, &[3, 0])]));
        let f = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        assert_eq!(f.mul(&Polynomial::one(&r)).unwrap(), f);
        let s = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        // convolution of exponent vectors by brute force
        let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
        for a in [[1u32, 0], [0, 1]] {
            for b in [[1u32, 0], [0, 1]] {
                *acc.entry(vec![a[0] + b[0], a[1] + b[1]]).or_default() += 1;
            }
        }
        let expected = p(&r, &acc.iter().map(|(e, c)| (*c, e.as_slice())).collect::<Vec<_>>());
        assert_eq!(s.mul(&s).unwrap(), expected);
        assert_eq!(expected.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn module_products() {
        let d = RingDescriptor::plain(&["x", "y"], 2).unwrap();
        let mr = PolyRing::rational(d, TermOrder::Lex).unwrap();
        let v = Polynomial::basis_vector(&mr, 1);
        assert!(v.mul(&v).is_err());
        let x = Polynomial::var(&mr.with_rank(1), 0);
        let xv = x.mul(&v).unwrap();
        assert_eq!(xv.to_string(), "[0, x]");
    }

    #[test]
    fn affine_substitution() {
        let r = ring(&["x"], TermOrder::DegLex);
        let f = p(&r, &[(1, &[1]), (-1, &[0])]);
        assert_eq!(f.substitute_affine(&[rat(1)]).unwrap(), Polynomial::var(&r, 0));
        let g = p(&r, &[(1, &[2])]);
        assert_eq!(g.substitute_affine(&[rat(0)]).unwrap(), g);
        // binomial expansion of (x+1)^2
        let expanded = p(&r, &[(1, &[2]), (2, &[1]), (1, &[0])]);
        assert_eq!(g.substitute_affine(&[rat(1)]).unwrap(), expanded);
        assert!(g.substitute_affine(&[]).is_err());
    }

    #[test]
    fn evaluation() {
        let r = ring(&["x", "y"], TermOrder::DegLex);
        let f = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        assert_eq!(f.evaluate(&[rat(0), rat(0)]).unwrap(), vec![rat(0)]);
        assert_eq!(f.evaluate(&[rat(1), rat(1)]).unwrap(), vec![rat(0)]);
        let g = p(&r, &[(1, &[0, 2])]);
        assert_eq!(g.evaluate(&[rat(2), rat(3)]).unwrap(), vec![rat(9)]);
        assert_eq!(g.evaluate(&[ratio(1, 2), ratio(1, 3)]).unwrap(), vec![ratio(1, 9)]);
    }

    #[test]
    fn leading_and_smallest() {
        let r = ring(&["x", "y"], TermOrder::DegLex);
        let f = p(&r, &[(1, &[2, 0]), (1, &[1, 1]), (-2, &[0, 1])]);
        assert_eq!(f.leading_term().unwrap().exp(), &Exponents::new(vec![2, 0]));
        let s = f.smallest_term().unwrap();
        assert_eq!(
            (s.exp().clone(), s.coeff.clone()),
            (Exponents::new(vec![0, 1]), rat(-2))
        );
        let rl = ring(&["x", "y", "t"], TermOrder::Lex);
        let g = p(&rl, &[(-1, &[1, 0, 1]), (1, &[0, 1, 0])]);
        let lt = g.leading_term().unwrap();
        assert_eq!(
            (lt.exp().clone(), lt.coeff.clone()),
            (Exponents::new(vec![1, 0, 1]), rat(-1))
        );
    }
}
