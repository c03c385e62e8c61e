//! Differential operators in the normalized basis `D(α) = ∂^α / α!`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::rational::factorial;
use crate::algebra::{Coeff, Exponents, Monomial, Polynomial, Rational, RingRef, Term};
use crate::error::{Error, Result};
use crate::linalg;

/// An operator `Σ c_{k,α} D(α)` acting on the `k`-th component.
///
/// Stored as a polynomial in the differential variables: the term
/// `c x^α e_k` stands for `c D(α)` on component `k`. The ring's ordering
/// is the one used to pick leading and pivot terms.
#[derive(Clone, PartialEq)]
pub struct DiffOp<C: Coeff> {
    poly: Polynomial<C>,
}

impl<C: Coeff> fmt::Debug for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({})", self.render())
    }
}

impl<C: Coeff> fmt::Display for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coeff> DiffOp<C> {
    /// Reads a polynomial's terms as `D`-basis coefficients: `a x^α ↦ a D(α)`.
    pub fn from_dual(poly: Polynomial<C>) -> Self {
        DiffOp { poly }
    }

    pub fn identity(ring: &RingRef<C>, pos: usize) -> Self {
        DiffOp {
            poly: Polynomial::basis_vector(ring, pos),
        }
    }

    pub fn zero(ring: &RingRef<C>) -> Self {
        DiffOp {
            poly: Polynomial::zero(ring),
        }
    }

    /// Builds an operator from `(position, α, coefficient of D(α))` triples.
    pub fn from_terms(ring: &RingRef<C>, terms: Vec<(usize, Exponents, C)>) -> Result<Self> {
        let terms = terms.into_iter().map(|(k, a, c)| Term::new(k, a, c)).collect();
        Ok(DiffOp {
            poly: Polynomial::new(ring.clone(), terms)?,
        })
    }

    pub fn ring(&self) -> &RingRef<C> {
        self.poly.ring()
    }

    pub fn as_polynomial(&self) -> &Polynomial<C> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `(position, α, coefficient of D(α))`, in descending ring order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Exponents, &C)> {
        self.poly.terms().iter().map(|t| (t.pos(), t.exp(), &t.coeff))
    }

    /// Coefficient of `D(α)` on component `pos`.
    pub fn coefficient(&self, pos: usize, alpha: &Exponents) -> C {
        self.poly.coefficient(&Monomial::new(pos, alpha.clone()))
    }

    /// Coefficient of `∂^α` on component `pos`, i.e. the `D(α)` one over `α!`.
    pub fn partial_coefficient(&self, pos: usize, alpha: &Exponents) -> C {
        let c = self.coefficient(pos, alpha);
        c.over(&C::from_rational(&alpha_factorial(alpha), &self.ring().ctx))
    }

    /// Total order of the operator.
    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn scale(&self, c: &C) -> Self {
        DiffOp {
            poly: self.poly.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(DiffOp {
            poly: self.poly.add(&other.poly)?,
        })
    }

    /// `σ_j`: lowers the `j`-th exponent, dropping terms without it.
    pub fn sigma(&self, j: usize) -> Self {
        let n = self.poly.ring().nvars();
        DiffOp {
            poly: self.poly.shift_down(&Exponents::unit(n, j)),
        }
    }

    /// `ρ_j`: raises the `j`-th exponent.
    pub fn rho(&self, j: usize) -> Self {
        let n = self.poly.ring().nvars();
        DiffOp {
            poly: self.poly.mul_term(&Exponents::unit(n, j), &C::one(&self.ring().ctx)),
        }
    }

    /// The value of `L(f)` at the origin: pairs each `D(α) e_k` with the
    /// coefficient of `x^α e_k` in `f`.
    pub fn pair(&self, f: &Polynomial<C>) -> C {
        let ctx = &self.ring().ctx;
        let mut acc = C::zero(ctx);
        let (mut i, mut j) = (0, 0);
        let (a, b) = (self.poly.terms(), f.terms());
        let order = &self.ring().order;
        // both term lists are sorted descending under the same order
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].mono, &b[j].mono) {
                std::cmp::Ordering::Greater => i += 1,
                std::cmp::Ordering::Less => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.plus(&a[i].coeff.times(&b[j].coeff));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// The operator's text, `d<name>` for each derivative.
    pub fn render(&self) -> String {
        let names: Vec<String> = self.ring().desc.names().iter().map(|n| format!("d{n}")).collect();
        self.render_with(&names)
    }

    pub fn render_with(&self, symbols: &[String]) -> String {
        let rank = self.ring().rank();
        let parts: Vec<String> = (0..rank).map(|k| self.render_component(k, symbols)).collect();
        if rank == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        }
    }

    fn render_component(&self, k: usize, symbols: &[String]) -> String {
        let mut out = String::new();
        for t in self.poly.terms().iter().filter(|t| t.pos() == k) {
            let c = self.partial_coefficient(k, t.exp());
            let neg = c.is_negative();
            let mag = if neg { c.negate() } else { c };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let d = render_derivative(t.exp(), symbols);
            if d.is_empty() {
                out.push_str(&mag.render_factor());
            } else if mag.is_one() {
                out.push_str(&d);
            } else {
                out.push_str(&mag.render_factor());
                out.push(' ');
                out.push_str(&d);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl DiffOp<Rational> {
    /// `L(f)` evaluated at `center`: pairs `L` with `f(x + center)`.
    pub fn apply_at(&self, f: &Polynomial<Rational>, center: &[Rational]) -> Result<Rational> {
        if f.ring().desc.names() != self.ring().desc.names() {
            return Err(Error::RingMismatch(
                "operator and polynomial use different variables".into(),
            ));
        }
        let shifted = f.substitute_affine(center)?;
        let shifted = if shifted.ring().order == self.ring().order {
            shifted
        } else {
            Polynomial::new(self.ring().with_rank(f.ring().rank()), shifted.into_terms())?
        };
        Ok(self.pair(&shifted))
    }
}

/// `α! = Π α_i!`.
pub fn alpha_factorial(alpha: &Exponents) -> Rational {
    alpha.as_slice().iter().map(|&e| factorial(e)).product()
}

/// `∂x^2 ∂y` as `dx^2 dy`.
pub fn render_derivative(alpha: &Exponents, symbols: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in alpha.as_slice().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(symbols[i].clone()),
            _ => parts.push(format!("{}^{}", symbols[i], e)),
        }
    }
    parts.join(" ")
}

/// The dual `a x^α ↦ a D(α)` of a polynomial.
pub fn dual_of_polynomial<C: Coeff>(g: &Polynomial<C>) -> DiffOp<C> {
    DiffOp::from_dual(g.clone())
}

/// Every module term carried by some operator, ascending under the ring
/// order.
fn support<C: Coeff>(ops: &[DiffOp<C>]) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = BTreeSet::new();
    for op in ops {
        set.extend(op.poly.terms().iter().map(|t| t.mono.clone()));
    }
    let mut v: Vec<Monomial> = set.into_iter().collect();
    if let Some(op) = ops.first() {
        let order = &op.ring().order;
        v.sort_by(|a, b| order.compare(a, b));
    }
    v
}

fn to_rows<C: Coeff>(ops: &[DiffOp<C>], cols: &[Monomial]) -> Vec<Vec<C>> {
    ops.iter()
        .map(|op| cols.iter().map(|m| op.poly.coefficient(m)).collect())
        .collect()
}

fn from_rows<C: Coeff>(ring: &RingRef<C>, rows: Vec<Vec<C>>, cols: &[Monomial]) -> Vec<DiffOp<C>> {
    rows.into_iter()
        .map(|row| {
            let terms = row
                .into_iter()
                .zip(cols)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| Term::new(m.pos, m.exp.clone(), c))
                .collect();
            DiffOp {
                poly: Polynomial::new(ring.clone(), terms).expect("shapes come from the ring"),
            }
        })
        .collect()
}

/// A canonical basis of the span: reduced row echelon form with pivots at
/// the smallest terms, each pivot coefficient one, ordered by pivot with
/// lower degree first and larger terms first within a degree.
pub fn canonical_basis<C: Coeff>(ops: &[DiffOp<C>]) -> Vec<DiffOp<C>> {
    let Some(first) = ops.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let cols = support(ops);
    let mut rows = to_rows(ops, &cols);
    let pivots = linalg::rref(&mut rows);
    let mut keyed: Vec<(Monomial, Vec<C>)> = pivots.into_iter().map(|p| cols[p].clone()).zip(rows).collect();
    let order = &ring.order;
    keyed.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| order.compare(b, a)));
    from_rows(&ring, keyed.into_iter().map(|(_, r)| r).collect(), &cols)
}

/// Dimension of the span.
pub fn span_rank<C: Coeff>(ops: &[DiffOp<C>]) -> usize {
    let cols = support(ops);
    linalg::rank(&to_rows(ops, &cols))
}

/// Whether two operator families span the same space.
pub fn same_span<C: Coeff>(a: &[DiffOp<C>], b: &[DiffOp<C>]) -> bool {
    canonical_basis(a) == canonical_basis(b)
}

/// Whether `op` lies in the span of `ops`.
pub fn in_span<C: Coeff>(op: &DiffOp<C>, ops: &[DiffOp<C>]) -> bool {
    if op.is_zero() {
        return true;
    }
    let mut all = ops.to_vec();
    all.push(op.clone());
    span_rank(&all) == span_rank(ops)
}

/// Whether the span is stable under every `σ_j`.
pub fn is_closed<C: Coeff>(ops: &[DiffOp<C>]) -> bool {
    let Some(first) = ops.first() else {
        return true;
    };
    let n = first.ring().nvars();
    let basis = canonical_basis(ops);
    basis.iter().all(|op| (0..n).all(|j| in_span(&op.sigma(j), &basis)))
}

/// The smallest σ-stable span containing `ops`, as a canonical basis.
pub fn closure<C: Coeff>(ops: &[DiffOp<C>]) -> Vec<DiffOp<C>> {
    let Some(first) = ops.first() else {
        return Vec::new();
    };
    let n = first.ring().nvars();
    let mut basis: Vec<DiffOp<C>> = Vec::new();
    let mut queue: Vec<DiffOp<C>> = ops.to_vec();
    while let Some(op) = queue.pop() {
        if in_span(&op, &basis) {
            continue;
        }
        for j in 0..n {
            let s = op.sigma(j);
            if !s.is_zero() {
                queue.push(s);
            }
        }
        basis.push(op);
    }
    canonical_basis(&basis)
}

/// The operator coordinates against a fixed column list.
pub fn coordinates<C: Coeff>(op: &DiffOp<C>, cols: &[Monomial]) -> Vec<C> {
    cols.iter().map(|m| op.poly.coefficient(m)).collect()
}

/// Checks the shape of a staircase-sized family: every operator's order is
/// below `μ`.
pub fn degrees_below<C: Coeff>(ops: &[DiffOp<C>], mu: usize) -> bool {
    ops.iter().all(|op| (op.degree() as usize) < mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};
    use crate::algebra::{PolyRing, RingDescriptor};
    use crate::order::TermOrder;
    use proptest::prelude::*;

    fn ring() -> RingRef<Rational> {
        PolyRing::rational(RingDescriptor::plain(&["x", "y"], 1).unwrap(), TermOrder::DegLex).unwrap()
    }

    fn op(r: &RingRef<Rational>, terms: &[(Rational, [u32; 2])]) -> DiffOp<Rational> {
        DiffOp::from_terms(
            r,
            terms
                .iter()
                .map(|(c, a)| (0, Exponents::new(a.to_vec()), c.clone()))
                .collect(),
        )
        .unwrap()
    }

    fn poly(r: &RingRef<Rational>, terms: &[(i64, [u32; 2])]) -> Polynomial<Rational> {
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
    fn sigma_and_rho() {
        let r = ring();
        let l = op(&r, &[(rat(1), [1, 1]), (rat(1), [3, 0])]);
        assert_eq!(l.sigma(0), op(&r, &[(rat(1), [0, 1]), (rat(1), [2, 0])]));
        assert_eq!(l.sigma(0).render(), "1/2 dx^2 + dy");
        assert!(op(&r, &[(rat(1), [0, 3])]).sigma(0).is_zero());
        assert_eq!(
            op(&r, &[(rat(1), [1, 1])]).sigma(0).sigma(1),
            op(&r, &[(rat(1), [0, 0])])
        );
        assert_eq!(op(&r, &[(rat(1), [0, 1]), (rat(1), [2, 0])]).rho(0), l);
        assert_eq!(l.render(), "1/6 dx^3 + dx dy");
        assert_eq!(DiffOp::identity(&r, 0).rho(1), op(&r, &[(rat(1), [0, 1])]));
    }

    #[test]
    fn application() {
        let r = ring();
        let origin = [rat(0), rat(0)];
        let dx = op(&r, &[(rat(1), [1, 0])]);
        let g1 = poly(&r, &[(1, [2, 0]), (-1, [0, 1])]);
        let g2 = poly(&r, &[(1, [0, 2])]);
        assert_eq!(dx.apply_at(&g1, &origin).unwrap(), rat(0));
        assert_eq!(dx.apply_at(&g2, &origin).unwrap(), rat(0));
        let l2 = op(&r, &[(rat(1), [0, 1]), (rat(1), [2, 0])]);
        assert_eq!(l2.apply_at(&g1, &origin).unwrap(), rat(0));
        let id = DiffOp::identity(&r, 0);
        assert_eq!(id.apply_at(&g1, &[rat(2), rat(1)]).unwrap(), rat(3));
        assert_eq!(id.apply_at(&Polynomial::zero(&r), &origin).unwrap(), rat(0));
    }

    #[test]
    fn duals() {
        let r = PolyRing::rational(RingDescriptor::plain(&["x", "y", "z"], 1).unwrap(), TermOrder::DegLex).unwrap();
        let g = Polynomial::new(
            r.clone(),
            vec![
                Term::new(0, Exponents::new(vec![3, 1, 0]), rat(1)),
                Term::new(0, Exponents::new(vec![1, 3, 0]), rat(1)),
                Term::new(0, Exponents::new(vec![1, 1, 1]), rat(1)),
            ],
        )
        .unwrap();
        let d = dual_of_polynomial(&g);
        assert_eq!(d.render(), "1/6 dx^3 dy + 1/6 dx dy^3 + dx dy dz");
        assert_eq!(dual_of_polynomial(&Polynomial::one(&r)).render(), "1");
        let x2 = Polynomial::new(r.clone(), vec![Term::new(0, Exponents::new(vec![2, 0, 0]), rat(1))]).unwrap();
        assert_eq!(
            dual_of_polynomial(&x2).partial_coefficient(0, &Exponents::new(vec![2, 0, 0])),
            ratio(1, 2)
        );
    }

    #[test]
    fn closedness() {
        let r = ring();
        let ops = [
            DiffOp::identity(&r, 0),
            op(&r, &[(rat(1), [1, 0])]),
            op(&r, &[(rat(1), [0, 1]), (rat(1), [2, 0])]),
            op(&r, &[(rat(1), [1, 1]), (rat(1), [3, 0])]),
        ];
        assert!(is_closed(&ops));
        let c = closure(&[op(&r, &[(rat(1), [1, 0])])]);
        assert_eq!(c.iter().map(|o| o.render()).collect::<Vec<_>>(), ["1", "dx"]);
        let bad = [op(&r, &[(rat(2), [1, 0]), (rat(3), [1, 1])])];
        assert!(!is_closed(&bad));
    }

    #[test]
    fn canonical_form_pivots_on_smallest_terms() {
        let r = ring();
        let ops = [
            op(&r, &[(rat(2), [1, 1]), (rat(2), [3, 0]), (rat(1), [0, 0])]),
            DiffOp::identity(&r, 0),
        ];
        let c = canonical_basis(&ops);
        assert_eq!(
            c.iter().map(|o| o.render()).collect::<Vec<_>>(),
            ["1", "1/6 dx^3 + dx dy"]
        );
    }

    fn random_op() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
        proptest::collection::vec((-5i64..6, 0u32..4, 0u32..4), 0..6)
    }

    proptest! {
        #[test]
        fn sigma_inverts_rho(spec in random_op(), j in 0usize..2) {
            let r = ring();
            let l = DiffOp::from_terms(&r, spec.iter().map(|(c, a, b)| (0, Exponents::new(vec![*a, *b]), rat(*c))).collect()).unwrap();
            prop_assert_eq!(l.rho(j).sigma(j), l.clone());
            let all_raised = l.terms().all(|(_, a, _)| a.get(j) > 0);
            if all_raised {
                prop_assert_eq!(l.sigma(j).rho(j), l);
            }
        }
    }
}
