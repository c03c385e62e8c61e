//! Exact scalars, polynomials, and rational functions.

pub mod coeff;
pub mod monomial;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod ring;

pub use coeff::Coeff;
pub use monomial::{Exponents, Monomial};
pub use poly::{Polynomial, Term};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use ring::{PolyRing, RingDescriptor, RingRef};
