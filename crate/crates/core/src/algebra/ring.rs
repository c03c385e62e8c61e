use std::collections::HashSet;
use std::sync::Arc;

use super::coeff::Coeff;
use crate::error::{Error, Result};
use crate::order::{ModuleOrder, TermOrder};

/// Variable names with the split into leading differential variables and
/// trailing parameters, plus the module rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    names: Vec<String>,
    x_count: usize,
    rank: usize,
}

impl RingDescriptor {
    pub fn new(names: Vec<String>, x_count: usize, rank: usize) -> Result<Self> {
        if x_count > names.len() {
            return Err(Error::InvalidRing(format!(
                "{} differential variables but only {} names",
                x_count,
                names.len()
            )));
        }
        if rank == 0 {
            return Err(Error::InvalidRing("module rank must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(RingDescriptor { names, x_count, rank })
    }

    /// A ring with no parameter block.
    pub fn plain(names: &[&str], rank: usize) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        Self::new(names, n, rank)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn t_count(&self) -> usize {
        self.names.len() - self.x_count
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_rank(&self, rank: usize) -> Self {
        RingDescriptor {
            names: self.names.clone(),
            x_count: self.x_count,
            rank,
        }
    }

    pub fn x_names(&self) -> &[String] {
        &self.names[..self.x_count]
    }

    pub fn t_names(&self) -> &[String] {
        &self.names[self.x_count..]
    }
}

/// A polynomial ring: variables, module ordering, and coefficient context.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<C: Coeff> {
    pub desc: RingDescriptor,
    pub order: ModuleOrder,
    pub ctx: C::Ctx,
}

pub type RingRef<C> = Arc<PolyRing<C>>;

impl<C: Coeff> PolyRing<C> {
    pub fn new(desc: RingDescriptor, order: ModuleOrder, ctx: C::Ctx) -> Result<RingRef<C>> {
        order.base.validate(&desc)?;
        Ok(Arc::new(PolyRing { desc, order, ctx }))
    }

    pub fn nvars(&self) -> usize {
        self.desc.nvars()
    }

    pub fn rank(&self) -> usize {
        self.desc.rank()
    }

    pub fn term_order(&self) -> &TermOrder {
        &self.order.base
    }

    pub fn with_rank(&self, rank: usize) -> RingRef<C> {
        Arc::new(PolyRing {
            desc: self.desc.with_rank(rank),
            order: self.order.clone(),
            ctx: self.ctx.clone(),
        })
    }

    pub fn with_order(&self, order: ModuleOrder) -> Result<RingRef<C>> {
        PolyRing::new(self.desc.clone(), order, self.ctx.clone())
    }

    /// Same variables, order and coefficients, ignoring the rank.
    pub fn compatible(&self, other: &PolyRing<C>) -> bool {
        self.desc.names == other.desc.names
            && self.desc.x_count == other.desc.x_count
            && self.order == other.order
            && self.ctx == other.ctx
    }
}

impl PolyRing<super::rational::Rational> {
    pub fn rational(desc: RingDescriptor, order: TermOrder) -> Result<RingRef<super::rational::Rational>> {
        PolyRing::new(desc, ModuleOrder::top(order), ())
    }
}
