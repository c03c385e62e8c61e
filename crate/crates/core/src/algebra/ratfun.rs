//! Rational functions in the parameter variables, with multivariate GCD by
//! recursive content / primitive-part reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::monomial::{Exponents, Monomial};
use super::poly::{Polynomial, Term};
use super::rational::{rat, Rational};
use super::ring::{PolyRing, RingDescriptor, RingRef};
use crate::error::{Error, Result};
use crate::order::TermOrder;

type Poly = Polynomial<Rational>;

/// Builds the parameter ring used as coefficient context: the given names,
/// rank 1, ordered by DegLex.
pub fn parameter_ring(names: &[String]) -> Result<RingRef<Rational>> {
    let desc = RingDescriptor::new(names.to_vec(), names.len(), 1)?;
    PolyRing::rational(desc, TermOrder::DegLex)
}

/// `num / den` over the rationals, reduced, with `den` monic under DegLex.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.render())
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.ring().rank() != 1 || den.ring().rank() != 1 || !num.ring().compatible(den.ring()) {
            return Err(Error::RingMismatch(
                "rational function parts must share a scalar ring".into(),
            ));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(den.ring());
            return RationalFunction { num, den: one };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                exact_div(&num, &g).expect("gcd divides numerator"),
                exact_div(&den, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().cloned().expect("nonzero denominator");
        if !One::is_one(&lc) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.ring());
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn ring(&self) -> &RingRef<Rational> {
        self.num.ring()
    }

    /// Value at a rational parameter point; `None` on a pole.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Option<Rational>> {
        let n = self.num.evaluate(point)?.remove(0);
        let d = self.den.evaluate(point)?.remove(0);
        if Zero::is_zero(&d) {
            return Ok(None);
        }
        Ok(Some(n / d))
    }
}

impl Coeff for RationalFunction {
    type Ctx = RingRef<Rational>;

    fn zero(ctx: &Self::Ctx) -> Self {
        RationalFunction {
            num: Poly::zero(ctx),
            den: Poly::one(ctx),
        }
    }

    fn one(ctx: &Self::Ctx) -> Self {
        RationalFunction {
            num: Poly::one(ctx),
            den: Poly::one(ctx),
        }
    }

    fn from_rational(q: &Rational, ctx: &Self::Ctx) -> Self {
        RationalFunction {
            num: Poly::constant(ctx, q.clone()),
            den: Poly::one(ctx),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.is_constant() && self.num.leading_coeff().is_some_and(One::is_one)
    }

    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.plus(&other.num), self.den.clone());
        }
        let n = self
            .num
            .mul(&other.den)
            .unwrap()
            .plus(&other.num.mul(&self.den).unwrap());
        Self::normalized(n, self.den.mul(&other.den).unwrap())
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num.ring());
        }
        Self::normalized(self.num.mul(&other.num).unwrap(), self.den.mul(&other.den).unwrap())
    }

    fn negate(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "division by zero");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.leading_coeff().cloned().unwrap_or_else(|| rat(0));
            let d = self.den.leading_coeff().cloned().unwrap_or_else(|| rat(1));
            Some(n / d)
        } else {
            None
        }
    }

    fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_some_and(Coeff::is_negative)
    }

    fn render_factor(&self) -> String {
        if self.den.is_constant() && self.num.len() > 1 {
            format!("({})", self.num)
        } else {
            self.render()
        }
    }

    fn render(&self) -> String {
        if self.den.is_constant() {
            self.num.to_string()
        } else {
            format!("{}/{}", grouped(&self.num), grouped(&self.den))
        }
    }
}

fn grouped(p: &Poly) -> String {
    if p.len() > 1
        || p.terms()
            .first()
            .is_some_and(|t| !t.exp().is_one() && !One::is_one(&t.coeff))
    {
        format!("({p})")
    } else {
        p.to_string()
    }
}

fn degree_in(f: &Poly, v: usize) -> u32 {
    f.terms().iter().map(|t| t.exp().get(v)).max().unwrap_or(0)
}

/// Coefficient of `v^d`, as a polynomial free of `v`.
fn coeff_in(f: &Poly, v: usize, d: u32) -> Poly {
    let terms = f
        .terms()
        .iter()
        .filter(|t| t.exp().get(v) == d)
        .map(|t| Term::new(0, t.exp().with(v, 0), t.coeff.clone()))
        .collect();
    Polynomial::from_terms(f.ring().clone(), terms)
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
pub fn exact_div(f: &Poly, g: &Poly) -> Option<Poly> {
    let lt = g.leading_term()?.clone();
    let lc_inv = lt.coeff.recip();
    let mut rem = f.clone();
    let mut quot = Vec::new();
    while let Some(head) = rem.leading_term() {
        let q = head.exp().checked_div(lt.exp())?;
        let c = &head.coeff * &lc_inv;
        rem = rem.minus(&g.mul_term(&q, &c));
        quot.push(Term::new(0, q, c));
    }
    Some(Polynomial::from_terms(f.ring().clone(), quot))
}

/// A pseudo-remainder of `f` by `g` in the variable `v`: a multiple of `f`
/// by a power of `lc_v(g)`, reduced below `deg_v(g)`.
fn pseudo_rem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let dg = degree_in(g, v);
    let lcg = coeff_in(g, v, dg);
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = degree_in(&r, v);
        if dr < dg {
            break;
        }
        let lcr = coeff_in(&r, v, dr);
        let shift = Exponents::unit(f.ring().nvars(), v);
        let mut shifted = g.clone();
        for _ in 0..(dr - dg) {
            shifted = shifted.mul_term(&shift, &rat(1));
        }
        r = integer_primitive(&lcg.mul(&r).unwrap().minus(&lcr.mul(&shifted).unwrap()));
    }
    r
}

/// Rescales by a rational so the coefficients are coprime integers with a
/// positive leading one.
fn integer_primitive(f: &Poly) -> Poly {
    let Some(lc) = f.leading_coeff() else {
        return f.clone();
    };
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for t in f.terms() {
        den = den.lcm(t.coeff.denom());
        num = num.gcd(t.coeff.numer());
    }
    let mut s = Rational::new(den, num);
    if Coeff::is_negative(lc) {
        s = -s;
    }
    f.scale(&s)
}

fn monic_or_zero(f: &Poly) -> Poly {
    f.monic()
}

/// Content of `f` as a polynomial in `v`: the gcd of its coefficients.
fn content_in(f: &Poly, v: usize) -> Poly {
    let d = degree_in(f, v);
    let mut c = Poly::zero(f.ring());
    for k in 0..=d {
        let ck = coeff_in(f, v, k);
        if !ck.is_zero() {
            c = gcd_from(&c, &ck, v + 1);
            if c.is_constant() && !c.is_zero() {
                break;
            }
        }
    }
    c
}

fn primitive_part(f: &Poly, v: usize) -> Poly {
    let c = content_in(f, v);
    integer_primitive(&exact_div(f, &c).expect("content divides"))
}

/// Monic gcd of two polynomials in the ring's variables.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_from(a, b, 0)
}

/// Gcd of polynomials involving only variables `v..`.
fn gcd_from(a: &Poly, b: &Poly, v: usize) -> Poly {
    if a.is_zero() {
        return monic_or_zero(b);
    }
    if b.is_zero() {
        return monic_or_zero(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    let n = a.ring().nvars();
    if v >= n {
        return Poly::one(a.ring());
    }
    let (da, db) = (degree_in(a, v), degree_in(b, v));
    if da == 0 && db == 0 {
        return gcd_from(a, b, v + 1);
    }
    let ca = if da == 0 { a.clone() } else { content_in(a, v) };
    let cb = if db == 0 { b.clone() } else { content_in(b, v) };
    let c = gcd_from(&ca, &cb, v + 1);
    if da == 0 || db == 0 {
        return c.monic();
    }
    let mut p = integer_primitive(&exact_div(a, &ca).expect("content divides"));
    let mut q = integer_primitive(&exact_div(b, &cb).expect("content divides"));
    if degree_in(&p, v) < degree_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if degree_in(&r, v) == 0 {
            return c.monic();
        }
        p = q;
        q = primitive_part(&r, v);
    }
    c.mul(&q).unwrap().monic()
}

/// Gcd of a list of polynomials (monic; zero for an all-zero list).
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => gcd(&a, p),
        });
    }
    acc
}

/// Splits a polynomial over `x ∪ t` into a polynomial in the `x`-block
/// with rational-function coefficients in `t`.
pub fn fold_parameters(f: &Poly, x_ring: &RingRef<RationalFunction>) -> Polynomial<RationalFunction> {
    let split = x_ring.nvars();
    let t_ring = &x_ring.ctx;
    let mut terms = Vec::with_capacity(f.len());
    for t in f.terms() {
        let xe = t.exp().slice(0, split);
        let te = t.exp().slice(split, t.exp().len());
        let tp = Polynomial::monomial(t_ring, Monomial::new(0, te), t.coeff.clone());
        terms.push(Term::new(t.pos(), xe, RationalFunction::from_poly(tp)));
    }
    Polynomial::from_terms(x_ring.clone(), terms)
}
