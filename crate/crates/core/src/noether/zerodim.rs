//! Noetherian operators of zero-dimensional primary ideals and modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::dual::{canonical_basis, closure, dual_of_polynomial, is_closed, DiffOp};
use crate::algebra::monomial::exponents_below;
use crate::algebra::{Exponents, Monomial, Polynomial, Rational, RingRef, Term};
use crate::error::{Error, Result};
use crate::groebner::{corner_monomials, GroebnerBasis, Staircase};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Forward,
    Backward,
    Linear,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Forward => "forward",
            Method::Backward => "backward",
            Method::Linear => "linear",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "forward" => Ok(Method::Forward),
            "backward" => Ok(Method::Backward),
            "linear" => Ok(Method::Linear),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// A closed operator family characterizing a primary ideal or module at a
/// rational point.
#[derive(Clone, Debug)]
pub struct NoetherianBasis {
    pub operators: Vec<DiffOp<Rational>>,
    pub multiplicity: usize,
    pub center: Vec<Rational>,
    pub method: Method,
    /// Gröbner basis of the ideal moved to the origin.
    pub source: GroebnerBasis<Rational>,
}

impl NoetherianBasis {
    /// The operators in canonical form.
    pub fn canonical(&self) -> Vec<DiffOp<Rational>> {
        canonical_basis(&self.operators)
    }

    /// Whether every operator annihilates `f` at the center.
    pub fn annihilates(&self, f: &Polynomial<Rational>) -> Result<bool> {
        for op in &self.operators {
            if !op.apply_at(f, &self.center)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Replaces every variable `v_i` by `v_i + point_i` in each generator, so a
/// variety at `point` moves to the origin.
pub fn translate_to_origin(gens: &[Polynomial<Rational>], point: &[Rational]) -> Result<Vec<Polynomial<Rational>>> {
    gens.iter().map(|g| g.substitute_affine(point)).collect()
}

/// Data shared by every zero-dimensional method: the basis at the origin,
/// its staircase, and the multiplicity.
#[derive(Clone, Debug)]
pub struct Localized {
    pub gens: Vec<Polynomial<Rational>>,
    pub gb: GroebnerBasis<Rational>,
    pub staircase: Staircase,
    pub center: Vec<Rational>,
}

impl Localized {
    pub fn multiplicity(&self) -> usize {
        self.staircase.multiplicity()
    }
}

/// Translates `gens` from `center` to the origin and checks that the
/// quotient is finite and supported at the origin only.
pub fn localize(ring: &RingRef<Rational>, gens: &[Polynomial<Rational>], center: &[Rational]) -> Result<Localized> {
    if center.len() != ring.nvars() {
        return Err(Error::LengthMismatch {
            expected: ring.nvars(),
            got: center.len(),
        });
    }
    let moved = translate_to_origin(gens, center)?;
    let gb = GroebnerBasis::compute(ring, &moved)?;
    let staircase = gb.staircase()?;
    let mu = staircase.multiplicity();
    let where_ = render_point(center);
    if mu == 0 {
        return Err(Error::CenterNotZero(where_));
    }
    let n = ring.nvars();
    for k in 0..ring.rank() {
        for i in 0..n {
            let power = Polynomial::monomial(
                ring,
                Monomial::new(k, Exponents::zero(n).with(i, mu as u32)),
                Rational::one(),
            );
            if !gb.is_member(&power) {
                return Err(Error::CenterNotZero(where_));
            }
        }
    }
    Ok(Localized {
        gens: moved,
        gb,
        staircase,
        center: center.to_vec(),
    })
}

pub fn render_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(crate::algebra::rational::format_rational).collect();
    format!("({})", parts.join(", "))
}

/// All module terms `x^α e_k` with `|α| < bound`.
fn terms_below(nvars: usize, rank: usize, bound: u32) -> Vec<Monomial> {
    let exps = exponents_below(nvars, bound);
    (0..rank)
        .flat_map(|k| exps.iter().map(move |e| Monomial::new(k, e.clone())))
        .collect()
}

/// Normal forms of `x^α e_k` for `|α| < μ`, built one variable at a time.
fn monomial_normal_forms(loc: &Localized) -> HashMap<Monomial, Polynomial<Rational>> {
    let ring = loc.gb.ring();
    let n = ring.nvars();
    let mu = loc.multiplicity() as u32;
    let mut nf: HashMap<Monomial, Polynomial<Rational>> = HashMap::new();
    for m in terms_below(n, ring.rank(), mu) {
        let value = match (0..n).find(|&j| m.exp.get(j) > 0) {
            None => loc
                .gb
                .normal_form(&Polynomial::monomial(ring, m.clone(), Rational::one())),
            Some(j) => {
                let below = Monomial::new(m.pos, m.exp.with(j, m.exp.get(j) - 1));
                let prev = &nf[&below];
                loc.gb
                    .normal_form(&prev.mul_term(&Exponents::unit(n, j), &Rational::one()))
            }
        };
        nf.insert(m, value);
    }
    nf
}

/// One operator per staircase monomial `β`: `Σ a_{βα} D(α) e_k` with
/// `a_{βα}` the coefficient of `β` in `NF(x^α e_k)`.
pub fn noetherian_forward(loc: &Localized) -> Result<NoetherianBasis> {
    let ring = loc.gb.ring();
    let nf = monomial_normal_forms(loc);
    let mut rows: BTreeMap<Monomial, Vec<Term<Rational>>> = BTreeMap::new();
    for (m, value) in &nf {
        for t in value.terms() {
            rows.entry(t.mono.clone())
                .or_default()
                .push(Term::new(m.pos, m.exp.clone(), t.coeff.clone()));
        }
    }
    let mut operators = Vec::with_capacity(loc.multiplicity());
    for beta in loc.staircase.monomials() {
        let terms = rows.remove(beta).unwrap_or_default();
        operators.push(DiffOp::from_dual(Polynomial::new(ring.clone(), terms)?));
    }
    Ok(NoetherianBasis {
        operators,
        multiplicity: loc.multiplicity(),
        center: loc.center.clone(),
        method: Method::Forward,
        source: loc.gb.clone(),
    })
}

/// `(g/m)(m - f)` for the signed smallest term `m` of `f`, when `m`
/// divides the single term `g`.
pub fn backward_step(g: &Term<Rational>, f: &Polynomial<Rational>) -> Option<Polynomial<Rational>> {
    let m = f.smallest_term()?;
    if m.pos() != g.pos() {
        return None;
    }
    let q = g.exp().checked_div(m.exp())?;
    let c = &g.coeff / &m.coeff;
    let head = Polynomial::monomial(f.ring(), m.mono.clone(), m.coeff.clone());
    Some(head.sub(f).ok()?.mul_term(&q, &c))
}

/// Breadth-first closure of backward steps from `corner`, summing the
/// corner with every distinct image of degree below `mu`.
pub fn backward_accumulate(gb: &GroebnerBasis<Rational>, corner: &Monomial, mu: usize) -> Polynomial<Rational> {
    let ring = gb.ring();
    let seed = Polynomial::monomial(ring, corner.clone(), Rational::one());
    let mut sum = seed.clone();
    let mut seen: Vec<Polynomial<Rational>> = vec![seed.clone()];
    let mut queue: std::collections::VecDeque<Term<Rational>> = seed.terms().iter().cloned().collect();
    while let Some(term) = queue.pop_front() {
        for f in gb.elements() {
            let Some(image) = backward_step(&term, f) else {
                continue;
            };
            if image.is_zero() || image.total_degree() as usize >= mu || seen.contains(&image) {
                continue;
            }
            sum = sum.add(&image).expect("same ring");
            queue.extend(image.terms().iter().cloned());
            seen.push(image);
        }
    }
    sum
}

/// The functional `x^α e_k ↦ coefficient of β in NF(x^α e_k)` restricted
/// to `|α| < μ`, found by climbing from `β` through the reduction
/// relations of the basis in increasing term order.
fn climb(loc: &Localized, beta: &Monomial) -> Polynomial<Rational> {
    let ring = loc.gb.ring();
    let order = &ring.order;
    let mu = loc.multiplicity() as u32;
    let elements = loc.gb.elements();
    let reducer = |a: &Monomial| {
        elements
            .iter()
            .position(|g| g.leading_term().is_some_and(|t| t.mono.divides(a)))
    };
    let mut pending: Vec<(Monomial, Rational)> = vec![(beta.clone(), Rational::one())];
    let mut out = Vec::new();
    while !pending.is_empty() {
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.compare(&a.0, &b.0))
            .unwrap();
        let (gamma, w) = pending.swap_remove(idx);
        if w.is_zero() {
            continue;
        }
        for (gi, g) in elements.iter().enumerate() {
            let lt = g.leading_term().unwrap();
            for tau in &g.terms()[1..] {
                if tau.pos() != gamma.pos {
                    continue;
                }
                let Some(u) = gamma.exp.checked_div(tau.exp()) else {
                    continue;
                };
                let alpha = Monomial::new(lt.pos(), u.mul(lt.exp()));
                if alpha.degree() >= mu || reducer(&alpha) != Some(gi) {
                    continue;
                }
                let delta = -(&tau.coeff / &lt.coeff) * &w;
                let delta: Rational = delta;
                match pending.iter_mut().find(|(m, _)| *m == alpha) {
                    Some((_, acc)) => *acc += delta,
                    None => pending.push((alpha, delta)),
                }
            }
        }
        out.push(Term::new(gamma.pos, gamma.exp, w));
    }
    Polynomial::from_terms(ring.clone(), out)
}

/// Operators dual to the corner monomials, closed under every `σ_j`.
pub fn noetherian_backward(loc: &Localized) -> Result<NoetherianBasis> {
    let corners = corner_monomials(&loc.staircase, &loc.gb);
    let seeds: Vec<DiffOp<Rational>> = corners.iter().map(|c| dual_of_polynomial(&climb(loc, c))).collect();
    let operators = closure(&seeds);
    if operators.len() != loc.multiplicity() {
        return Err(Error::Unsolvable {
            found: operators.len(),
            expected: loc.multiplicity(),
        });
    }
    Ok(NoetherianBasis {
        operators,
        multiplicity: loc.multiplicity(),
        center: loc.center.clone(),
        method: Method::Backward,
        source: loc.gb.clone(),
    })
}

/// Grows the dual space degree by degree: the operators of order `≤ d`
/// that vanish on every generator at the origin and whose `σ_j` images lie
/// in the previous degree's space.
pub fn noetherian_linear(loc: &Localized) -> Result<NoetherianBasis> {
    let mu = loc.multiplicity();
    let operators = linear_dual_space(loc.gb.ring(), &loc.gens, mu)?;
    Ok(NoetherianBasis {
        operators,
        multiplicity: mu,
        center: loc.center.clone(),
        method: Method::Linear,
        source: loc.gb.clone(),
    })
}

/// The closed dual space of `⟨gens⟩` at the origin, expected to have
/// dimension `mu`.
pub fn linear_dual_space(
    ring: &RingRef<Rational>,
    gens: &[Polynomial<Rational>],
    mu: usize,
) -> Result<Vec<DiffOp<Rational>>> {
    let n = ring.nvars();
    let rank = ring.rank();
    let mut prev: Vec<DiffOp<Rational>> = Vec::new();
    for d in 0..mu as u32 {
        let cols = terms_below(n, rank, d + 1);
        let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let nl = cols.len();
        let nvars_total = nl + n * prev.len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for g in gens {
            let mut row = vec![Rational::zero(); nvars_total];
            let mut any = false;
            for t in g.terms() {
                if let Some(&i) = index.get(&t.mono) {
                    row[i] = t.coeff.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
        if d > 0 {
            let lower = terms_below(n, rank, d);
            for j in 0..n {
                for m in &lower {
                    let mut row = vec![Rational::zero(); nvars_total];
                    let raised = Monomial::new(m.pos, m.exp.with(j, m.exp.get(j) + 1));
                    row[index[&raised]] = Rational::one();
                    for (i, b) in prev.iter().enumerate() {
                        let c = b.coefficient(m.pos, &m.exp);
                        if !c.is_zero() {
                            row[nl + j * prev.len() + i] = -c;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = linalg::nullspace(&rows, nvars_total, &());
        let ops: Vec<DiffOp<Rational>> = kernel
            .into_iter()
            .map(|v| {
                let terms = v[..nl]
                    .iter()
                    .zip(&cols)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, m)| Term::new(m.pos, m.exp.clone(), c.clone()))
                    .collect();
                DiffOp::from_dual(Polynomial::from_terms(ring.clone(), terms))
            })
            .filter(|op| !op.is_zero())
            .collect();
        let space = canonical_basis(&ops);
        if space.is_empty() {
            return Err(Error::CenterNotZero("(origin)".into()));
        }
        if space.len() == mu {
            return Ok(space);
        }
        if space.len() > mu || space.len() == prev.len() {
            return Err(Error::Unsolvable {
                found: space.len(),
                expected: mu,
            });
        }
        prev = space;
    }
    Err(Error::Unsolvable {
        found: prev.len(),
        expected: mu,
    })
}

/// Runs the chosen method on generators centered at `center`.
pub fn noetherian_operators(
    ring: &RingRef<Rational>,
    gens: &[Polynomial<Rational>],
    center: &[Rational],
    method: Method,
) -> Result<NoetherianBasis> {
    let loc = localize(ring, gens, center)?;
    match method {
        Method::Forward => noetherian_forward(&loc),
        Method::Backward => noetherian_backward(&loc),
        Method::Linear => noetherian_linear(&loc),
    }
}

/// The reduced Gröbner basis of all polynomials of degree `≤ bound` that
/// every operator annihilates at the origin.
pub fn ideal_from_conditions(ops: &[DiffOp<Rational>], bound: u32) -> Result<Vec<Polynomial<Rational>>> {
    let Some(first) = ops.first() else {
        return Ok(Vec::new());
    };
    if !is_closed(ops) {
        return Err(Error::NotClosed);
    }
    let ring = first.ring().clone();
    let order = &ring.order;
    let mut cols = terms_below(ring.nvars(), ring.rank(), bound + 1);
    cols.sort_by(|a, b| order.compare(b, a));
    let conditions: Vec<Vec<Rational>> = ops
        .iter()
        .map(|op| cols.iter().map(|m| op.coefficient(m.pos, &m.exp)).collect())
        .collect();
    let mut kernel = linalg::nullspace(&conditions, cols.len(), &());
    let pivots = linalg::rref(&mut kernel);
    let leads: Vec<&Monomial> = pivots.iter().map(|&p| &cols[p]).collect();
    let mut out = Vec::new();
    for (row, &p) in kernel.iter().zip(&pivots) {
        let lead = &cols[p];
        let minimal = !leads.iter().any(|other| *other != lead && other.divides(lead));
        if !minimal {
            continue;
        }
        let terms = row
            .iter()
            .zip(&cols)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| Term::new(m.pos, m.exp.clone(), c.clone()))
            .collect();
        out.push(Polynomial::new(ring.clone(), terms)?);
    }
    Ok(out)
}
