//! Noetherian operators of primary ideals whose variety is a coordinate
//! subspace `{x = 0}` parametrized by the trailing variables `t`.

use std::collections::BTreeMap;

use super::dual::{canonical_basis, DiffOp};
use crate::algebra::monomial::exponents_below;
use crate::algebra::ratfun::{exact_div, fold_parameters, gcd, gcd_all, parameter_ring};
use crate::algebra::rational::rat;
use crate::algebra::{
    Coeff, Exponents, Monomial, PolyRing, Polynomial, Rational, RationalFunction, RingDescriptor, RingRef, Term,
};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GroebnerBasis, Staircase};
use crate::order::{is_elimination_for, ModuleOrder};

type Poly = Polynomial<Rational>;

/// What the normal-position test found.
#[derive(Clone, Debug)]
pub struct NormalPositionReport {
    /// No nonzero polynomial in the parameters alone lies in the ideal.
    pub contraction_trivial: bool,
    /// Basis of the contraction when it is not trivial.
    pub witnesses: Vec<Poly>,
    /// Per differential variable, the exponent of a parameter-free pure
    /// power leading term.
    pub monic_powers: Vec<Option<u32>>,
    /// Finite staircase over `Q(t)` with every `x_i^{e_i}` leading.
    pub extended_variety_is_origin: bool,
    /// Every `x_i^μ e_k` lies in the extended module, so the extended
    /// variety really is the origin and not some other point.
    pub supported_at_origin: bool,
    /// Sum of the parameter parts of all leading terms.
    pub gamma: Exponents,
}

impl NormalPositionReport {
    pub fn ok(&self) -> bool {
        self.contraction_trivial && self.monic_powers.iter().all(Option::is_some) && self.extended_variety_is_origin
    }

    /// A short description of the first failed condition.
    pub fn failure(&self, ring: &RingRef<Rational>) -> Option<String> {
        if !self.contraction_trivial {
            let w: Vec<String> = self.witnesses.iter().map(|p| p.to_string()).collect();
            return Some(format!("the contraction to the parameters contains {}", w.join(", ")));
        }
        let missing: Vec<&str> = self
            .monic_powers
            .iter()
            .zip(ring.desc.x_names())
            .filter(|(e, _)| e.is_none())
            .map(|(_, n)| n.as_str())
            .collect();
        if !missing.is_empty() {
            return Some(format!("no parameter-free pure power of {}", missing.join(", ")));
        }
        if !self.extended_variety_is_origin {
            return Some("the extended staircase is infinite".into());
        }
        if !self.supported_at_origin {
            return Some("the extended ideal vanishes away from x = 0".into());
        }
        None
    }
}

fn split_parts(e: &Exponents, x: usize) -> (Exponents, Exponents) {
    (e.slice(0, x), e.slice(x, e.len()))
}

/// The ring in the differential variables with coefficients in `Q(t)`.
pub fn extended_ring(ring: &RingRef<Rational>) -> Result<RingRef<RationalFunction>> {
    let base = ring.term_order();
    let x_order = if ring.desc.t_count() == 0 {
        base.clone()
    } else {
        base.x_part().ok_or_else(|| Error::NotElimination(base.name()))?
    };
    let desc = RingDescriptor::new(ring.desc.x_names().to_vec(), ring.desc.x_count(), ring.rank())?;
    let params = parameter_ring(ring.desc.t_names())?;
    PolyRing::new(desc, ModuleOrder::new(x_order, ring.order.precedence), params)
}

/// Tests the normal-position conditions on `⟨gens⟩`.
pub fn check_normal_position(ring: &RingRef<Rational>, gens: &[Poly]) -> Result<NormalPositionReport> {
    if !is_elimination_for(ring.term_order(), &ring.desc) {
        return Err(Error::NotElimination(ring.term_order().name()));
    }
    let x = ring.desc.x_count();
    let witnesses = eliminate(ring, gens)?;
    let gb = GroebnerBasis::compute(ring, gens)?;
    let lts = gb.leading_monomials();
    let monic_powers: Vec<Option<u32>> = (0..x)
        .map(|v| {
            lts.iter()
                .filter(|m| m.exp.pure_power_var() == Some(v))
                .map(|m| m.exp.get(v))
                .min()
        })
        .collect();
    let mut gamma = Exponents::zero(ring.nvars() - x);
    for m in &lts {
        gamma = gamma.mul(&split_parts(&m.exp, x).1);
    }
    let (extended_variety_is_origin, supported) = if witnesses.is_empty() {
        let ext = extend_to_rational_coeffs(&gb)?;
        let finite = ext.staircase().is_ok();
        let powers_leading = monic_powers.iter().enumerate().all(|(v, e): (usize, &Option<u32>)| {
            e.is_some_and(|e| {
                (0..ring.rank()).all(|k| ext.is_leading(&Monomial::new(k, Exponents::zero(x).with(v, e))))
            })
        });
        (finite && powers_leading, supported_at_origin(&ext))
    } else {
        (false, false)
    };
    Ok(NormalPositionReport {
        contraction_trivial: witnesses.is_empty(),
        witnesses,
        monic_powers,
        extended_variety_is_origin,
        supported_at_origin: supported,
        gamma,
    })
}

/// Finite staircase and `x_i^μ e_k` in the module for every `i`, `k`.
fn supported_at_origin(ext: &GroebnerBasis<RationalFunction>) -> bool {
    let Ok(stairs) = ext.staircase() else {
        return false;
    };
    let mu = stairs.multiplicity() as u32;
    if mu == 0 {
        return false;
    }
    let ring = ext.ring();
    let n = ring.nvars();
    (0..ring.rank()).all(|k| {
        (0..n).all(|i| {
            let m = Monomial::new(k, Exponents::zero(n).with(i, mu));
            ext.is_member(&Polynomial::monomial(ring, m, RationalFunction::one(&ring.ctx)))
        })
    })
}

/// Reads a basis over `Q[x, t]` as polynomials in `x` over `Q(t)`, each
/// made monic. The element set is kept as it is.
pub fn extend_to_rational_coeffs(gb: &GroebnerBasis<Rational>) -> Result<GroebnerBasis<RationalFunction>> {
    let ring = gb.ring();
    if !is_elimination_for(ring.term_order(), &ring.desc) {
        return Err(Error::NotElimination(ring.term_order().name()));
    }
    let xr = extended_ring(ring)?;
    let elements = gb.elements().iter().map(|g| fold_parameters(g, &xr).monic()).collect();
    Ok(GroebnerBasis::from_reduced(&xr, elements))
}

/// Buchberger's algorithm run directly over `Q(t)` on the folded
/// generators.
pub fn rational_coeff_basis(ring: &RingRef<Rational>, gens: &[Poly]) -> Result<GroebnerBasis<RationalFunction>> {
    let xr = extended_ring(ring)?;
    let folded: Vec<Polynomial<RationalFunction>> = gens.iter().map(|g| fold_parameters(g, &xr)).collect();
    GroebnerBasis::compute(&xr, &folded)
}

/// Minimal generators of the leading-term module of a basis.
pub fn minimal_leading_terms<C: Coeff>(gb: &GroebnerBasis<C>) -> Vec<Monomial> {
    let lts = gb.leading_monomials();
    let mut out: Vec<Monomial> = lts
        .iter()
        .enumerate()
        .filter(|(i, m)| {
            !lts.iter()
                .enumerate()
                .any(|(j, o)| (o != *m && o.divides(m)) || (o == *m && j < *i))
        })
        .map(|(_, m)| m.clone())
        .collect();
    out.sort();
    out
}

pub fn multiplicity_extended(ext: &GroebnerBasis<RationalFunction>) -> Result<usize> {
    Ok(ext.staircase()?.multiplicity())
}

/// Operators with coefficients in `Q[t]` for an ideal in normal position.
#[derive(Clone, Debug)]
pub struct PositiveBasis {
    /// As produced by the iteration.
    pub raw: Vec<DiffOp<RationalFunction>>,
    /// With the common factor of each operator divided out.
    pub operators: Vec<DiffOp<RationalFunction>>,
    pub multiplicity: usize,
    pub gamma: Exponents,
    /// Number of multiplications by `t^γ`.
    pub rounds: usize,
    pub staircase: Staircase,
    pub extended: GroebnerBasis<RationalFunction>,
    pub source: GroebnerBasis<Rational>,
}

/// Repeatedly multiplies `x^α e_k` (`|α| < μ`) by `t^γ` and reduces, until
/// the coefficient rows indexed by residual `x`-monomials number exactly
/// `μ`, all inside the extended staircase.
pub fn noetherian_positive(ring: &RingRef<Rational>, gens: &[Poly]) -> Result<PositiveBasis> {
    let report = check_normal_position(ring, gens)?;
    if let Some(why) = report.failure(ring) {
        return Err(Error::NotNormalPosition(why));
    }
    let gb = GroebnerBasis::compute(ring, gens)?;
    let ext = extend_to_rational_coeffs(&gb)?;
    let staircase = ext.staircase()?;
    let mu = staircase.multiplicity();
    let xr = ext.ring().clone();
    let x = ring.desc.x_count();
    let shift = Exponents::zero(x).concat(&report.gamma);
    let mut states = initial_states(ring, mu);
    let degree = gb
        .elements()
        .iter()
        .map(Polynomial::total_degree)
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let cap = mu * degree;
    for round in 1..=cap {
        advance(&gb, &mut states, &shift);
        let rows = coefficient_rows(&states, &xr, x);
        if rows.len() == mu && rows.keys().all(|b| staircase.contains(b)) {
            let mut raw = Vec::with_capacity(mu);
            for beta in staircase.monomials() {
                raw.push(DiffOp::from_dual(Polynomial::new(xr.clone(), rows[beta].clone())?));
            }
            let operators = cleanup_operators(&raw);
            return Ok(PositiveBasis {
                raw,
                operators,
                multiplicity: mu,
                gamma: report.gamma,
                rounds: round,
                staircase,
                extended: ext,
                source: gb,
            });
        }
    }
    Err(Error::IterationCap { cap, expected: mu })
}

/// `x^α e_k` for `|α| < μ`, tagged by `α e_k`.
fn initial_states(ring: &RingRef<Rational>, mu: usize) -> Vec<(Monomial, Poly)> {
    let x = ring.desc.x_count();
    let n = ring.nvars();
    let mut states = Vec::new();
    for k in 0..ring.rank() {
        for a in exponents_below(x, mu as u32) {
            let full = a.concat(&Exponents::zero(n - x));
            states.push((
                Monomial::new(k, a),
                Polynomial::monomial(ring, Monomial::new(k, full), rat(1)),
            ));
        }
    }
    states
}

/// One multiplication by `t^γ` followed by reduction.
fn advance(gb: &GroebnerBasis<Rational>, states: &mut [(Monomial, Poly)], shift: &Exponents) {
    for (_, h) in states.iter_mut() {
        *h = gb.normal_form(&h.mul_term(shift, &rat(1)));
    }
}

/// Groups the reduced states by residual `x`-monomial: row `β` holds
/// `Σ_α a_{βα}(t) D(α)`.
fn coefficient_rows(
    states: &[(Monomial, Poly)],
    xr: &RingRef<RationalFunction>,
    x: usize,
) -> BTreeMap<Monomial, Vec<Term<RationalFunction>>> {
    let t_ring = &xr.ctx;
    let mut rows: BTreeMap<Monomial, BTreeMap<Monomial, Vec<Term<Rational>>>> = BTreeMap::new();
    for (alpha, h) in states {
        for term in h.terms() {
            let (xe, te) = split_parts(term.exp(), x);
            rows.entry(Monomial::new(term.pos(), xe))
                .or_default()
                .entry(alpha.clone())
                .or_default()
                .push(Term::new(0, te, term.coeff.clone()));
        }
    }
    let mut out = BTreeMap::new();
    for (beta, entries) in rows {
        let mut terms = Vec::new();
        for (alpha, tt) in entries {
            let c = Polynomial::new(t_ring.clone(), tt).expect("parameter ring");
            if !c.is_zero() {
                terms.push(Term::new(alpha.pos, alpha.exp, RationalFunction::from_poly(c)));
            }
        }
        if !terms.is_empty() {
            out.insert(beta, terms);
        }
    }
    out
}

/// Clears denominators and divides each operator by the monic gcd of its
/// coefficients.
pub fn cleanup_operators(ops: &[DiffOp<RationalFunction>]) -> Vec<DiffOp<RationalFunction>> {
    ops.iter().map(cleanup_one).collect()
}

fn cleanup_one(op: &DiffOp<RationalFunction>) -> DiffOp<RationalFunction> {
    let t_ring = op.ring().ctx.clone();
    let coeffs: Vec<RationalFunction> = op.terms().map(|(_, _, c)| c.clone()).collect();
    if coeffs.is_empty() {
        return op.clone();
    }
    let mut den = Poly::one(&t_ring);
    for c in &coeffs {
        let g = gcd(&den, c.denom());
        let q = exact_div(c.denom(), &g).expect("gcd divides");
        den = den.mul(&q).expect("scalar ring");
    }
    let nums: Vec<Poly> = coeffs
        .iter()
        .map(|c| exact_div(&c.numer().mul(&den).expect("scalar ring"), c.denom()).expect("common denominator"))
        .collect();
    let g = gcd_all(nums.iter()).expect("nonzero operator");
    let factor = RationalFunction::new(den, g).expect("nonzero gcd");
    op.scale(&factor)
}

/// Whether every operator sends `f` to zero on `{x = 0}`.
pub fn member_positive(f: &Poly, basis: &PositiveBasis) -> bool {
    let Some(op) = basis.operators.first() else {
        return f.is_zero();
    };
    let folded = fold_parameters(f, op.ring());
    basis.operators.iter().all(|op| op.pair(&folded).is_zero())
}

/// Canonical form over `Q(t)`.
pub fn canonical_positive(ops: &[DiffOp<RationalFunction>]) -> Vec<DiffOp<RationalFunction>> {
    canonical_basis(ops)
}
