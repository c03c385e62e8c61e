//! Term orderings on power products and module terms.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::monomial::{Exponents, Monomial};
use crate::algebra::ring::RingDescriptor;
use crate::error::{Error, Result};

/// A term ordering on exponent vectors. The first declared variable is the
/// largest one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegLex,
    DegRevLex,
    /// Compares the first `split` variables with `x` and breaks ties on the
    /// remaining variables with `t`.
    Product {
        x: Box<TermOrder>,
        t: Box<TermOrder>,
        split: usize,
    },
}

impl TermOrder {
    pub fn product(x: TermOrder, t: TermOrder, split: usize) -> Result<TermOrder> {
        if matches!(x, TermOrder::Product { .. }) || matches!(t, TermOrder::Product { .. }) {
            return Err(Error::InvalidOrder(
                "product orders take non-product inner orders".into(),
            ));
        }
        Ok(TermOrder::Product {
            x: Box::new(x),
            t: Box::new(t),
            split,
        })
    }

    pub fn compare(&self, a: &Exponents, b: &Exponents) -> Ordering {
        compare_slices(self, a.as_slice(), b.as_slice())
    }

    /// Checks that the order is usable on `desc`.
    pub fn validate(&self, desc: &RingDescriptor) -> Result<()> {
        if let TermOrder::Product { split, .. } = self {
            if desc.t_count() == 0 {
                return Err(Error::InvalidOrder(
                    "a product order needs a non-empty parameter block".into(),
                ));
            }
            if *split != desc.x_count() {
                return Err(Error::InvalidOrder(format!(
                    "product order split {} does not match the {} differential variables",
                    split,
                    desc.x_count()
                )));
            }
        }
        Ok(())
    }

    /// The order induced on the first `split` variables, if this order is
    /// a product (or lex, which is one).
    pub fn x_part(&self) -> Option<TermOrder> {
        match self {
            TermOrder::Product { x, .. } => Some((**x).clone()),
            TermOrder::Lex => Some(TermOrder::Lex),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::DegLex => "deglex".into(),
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::Product { x, t, .. } => format!("product({},{})", x.name(), t.name()),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn compare_slices(order: &TermOrder, a: &[u32], b: &[u32]) -> Ordering {
    match order {
        TermOrder::Lex => a.cmp(b),
        TermOrder::DegLex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        }
        TermOrder::DegRevLex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        }
        TermOrder::Product { x, t, split } => {
            compare_slices(x, &a[..*split], &b[..*split]).then_with(|| compare_slices(t, &a[*split..], &b[*split..]))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precedence {
    /// Power product first, position second (`top`).
    TermOverPosition,
    /// Position first, power product second (`pot`).
    PositionOverTerm,
}

/// Ordering on module terms. Among equal power products (or under
/// position-over-term), `e1 > e2 > ... > es`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub base: TermOrder,
    pub precedence: Precedence,
}

impl ModuleOrder {
    pub fn new(base: TermOrder, precedence: Precedence) -> Self {
        ModuleOrder { base, precedence }
    }

    pub fn top(base: TermOrder) -> Self {
        ModuleOrder::new(base, Precedence::TermOverPosition)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compare_parts(a.pos, &a.exp, b.pos, &b.exp)
    }

    pub fn compare_parts(&self, apos: usize, aexp: &Exponents, bpos: usize, bexp: &Exponents) -> Ordering {
        let by_position = bpos.cmp(&apos);
        match self.precedence {
            Precedence::TermOverPosition => self.base.compare(aexp, bexp).then(by_position),
            Precedence::PositionOverTerm => by_position.then_with(|| self.base.compare(aexp, bexp)),
        }
    }

    pub fn name(&self) -> String {
        match self.precedence {
            Precedence::TermOverPosition => format!("{} top", self.base.name()),
            Precedence::PositionOverTerm => format!("{} pot", self.base.name()),
        }
    }
}

/// True when `order` provably has the elimination property for the
/// differential block of `desc`: a polynomial whose leading term involves
/// only parameters involves only parameters.
pub fn is_elimination_for(order: &TermOrder, desc: &RingDescriptor) -> bool {
    if desc.t_count() == 0 || desc.x_count() == 0 {
        return true;
    }
    match order {
        TermOrder::Product { split, .. } => *split == desc.x_count(),
        // the differential variables always form the initial segment
        TermOrder::Lex => true,
        TermOrder::DegLex | TermOrder::DegRevLex => false,
    }
}
