use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Coefficient field of a polynomial ring.
///
/// `Ctx` carries whatever a field needs to build its constants; it is `()`
/// for the rationals and the parameter ring for rational functions.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(q: &Rational, ctx: &Self::Ctx) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn recip(&self) -> Self;

    fn over(&self, other: &Self) -> Self {
        self.times(&other.recip())
    }

    /// The value as a rational constant, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Whether the printed form carries a leading minus sign.
    fn is_negative(&self) -> bool;

    /// Text of the coefficient as a factor in front of a monomial,
    /// parenthesized when it is a compound expression.
    fn render_factor(&self) -> String;

    /// Text of the coefficient on its own.
    fn render(&self) -> String;
}

impl Coeff for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <Rational as Zero>::zero()
    }

    fn one(_: &()) -> Self {
        <Rational as One>::one()
    }

    fn from_rational(q: &Rational, _: &()) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        Rational::recip(self)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn render_factor(&self) -> String {
        format_rational(self)
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}
