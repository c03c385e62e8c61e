//! Exponential-polynomial solutions of constant-coefficient systems.
//!
//! An operator `L` at a point `p` contributes `L(e^{⟨x, s⟩})` evaluated at
//! `x = p`, which is `Σ c_α s^α e^{⟨p, s⟩}`, times a free constant. On a
//! family `{x = 0}` parametrized by `t` the same expression is integrated
//! against a free measure in the parameters.

use crate::algebra::ratfun::parameter_ring;
use crate::algebra::rational::{format_rational, is_negative};
use crate::algebra::{Coeff, Polynomial, Rational, RationalFunction, RingRef, Term};
use crate::error::{Error, Result};
use crate::noether::DiffOp;

use super::output::{SolutionDocument, SolutionTerm};

/// The operators of one primary component.
#[derive(Clone, Debug)]
pub enum ComponentOperators {
    Point {
        center: Vec<Rational>,
        operators: Vec<DiffOp<Rational>>,
    },
    /// Operators with coefficients in the parameters, supported on `x = 0`.
    Family { operators: Vec<DiffOp<RationalFunction>> },
}

/// `A, B, ..., Z, A1, B1, ...`.
fn constant_name(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

fn integration_names(d: usize) -> Vec<String> {
    if d == 1 {
        vec!["τ".into()]
    } else {
        (1..=d).map(|i| format!("τ{i}")).collect()
    }
}

/// Space-separated power product, empty for 1.
fn render_monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    parts.join(" ")
}

/// `2 z - t`; `None` for the zero form.
fn render_linear(coeffs: &[Rational], names: &[String]) -> Option<String> {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let neg = is_negative(c);
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !num_traits::One::is_one(&mag) {
            out.push_str(&format_rational(&mag));
            out.push(' ');
        }
        out.push_str(n);
    }
    (!out.is_empty()).then_some(out)
}

fn push_signed(out: &mut String, neg: bool, body: &str) {
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(body);
}

/// Renames the parameters of a rational function.
fn rename(c: &RationalFunction, ring: &RingRef<Rational>) -> RationalFunction {
    let move_poly = |p: &Polynomial<Rational>| {
        let terms = p
            .terms()
            .iter()
            .map(|t| Term::new(0, t.exp().clone(), t.coeff.clone()))
            .collect();
        Polynomial::new(ring.clone(), terms).expect("same number of parameters")
    };
    RationalFunction::new(move_poly(c.numer()), move_poly(c.denom())).expect("nonzero denominator")
}

/// Writes the general solution spanned by the given components.
pub fn emit_ep_solution(
    ring: &RingRef<Rational>,
    components: &[ComponentOperators],
    space: Option<&[String]>,
) -> Result<SolutionDocument> {
    if components.is_empty() {
        return Err(Error::MissingDecomposition);
    }
    let x = ring.desc.x_count();
    let n = ring.nvars();
    let has_family = components
        .iter()
        .any(|c| matches!(c, ComponentOperators::Family { .. }));
    let wanted = if has_family { n } else { x };
    let variables: Vec<String> = match space {
        Some(s) => s.to_vec(),
        None if has_family => ring.desc.names().to_vec(),
        None => ring.desc.x_names().to_vec(),
    };
    if variables.len() != wanted {
        return Err(Error::Precondition(format!(
            "expected {wanted} solution variables, got {}",
            variables.len()
        )));
    }
    let rank = ring.rank();
    let taus = integration_names(n - x);
    let tau_ring = parameter_ring(&taus)?;

    let mut terms = Vec::new();
    let mut point_parts: Vec<String> = vec![String::new(); rank];
    let mut integrals: Vec<String> = Vec::new();
    let mut constants = 0;
    let mut measures = 0;
    for comp in components {
        match comp {
            ComponentOperators::Point { center, operators } => {
                if center.len() != x {
                    return Err(Error::LengthMismatch {
                        expected: x,
                        got: center.len(),
                    });
                }
                let exponent = render_linear(center, &variables);
                for op in operators {
                    let name = constant_name(constants);
                    constants += 1;
                    for (k, a, _) in op.terms() {
                        let c = op.partial_coefficient(k, a);
                        let mut monomial = a.as_slice().to_vec();
                        monomial.resize(wanted, 0);
                        terms.push(SolutionTerm {
                            pos: k + 1,
                            constant: name.clone(),
                            coeff: format_rational(&c),
                            monomial: monomial.clone(),
                            exponent: center
                                .iter()
                                .map(format_rational)
                                .chain(std::iter::repeat("0".to_string()))
                                .take(wanted)
                                .collect(),
                        });
                        let neg = is_negative(&c);
                        let mag = if neg { -c } else { c };
                        let mut factors = Vec::new();
                        if !num_traits::One::is_one(&mag) {
                            factors.push(format_rational(&mag));
                        }
                        factors.push(name.clone());
                        let m = render_monomial(&monomial, &variables);
                        if !m.is_empty() {
                            factors.push(m);
                        }
                        if let Some(e) = &exponent {
                            factors.push(format!("e^({e})"));
                        }
                        push_signed(&mut point_parts[k], neg, &factors.join(" "));
                    }
                }
            }
            ComponentOperators::Family { operators } => {
                let exponent = {
                    let pairs: Vec<String> = variables[x..]
                        .iter()
                        .zip(&taus)
                        .map(|(s, t)| format!("{s} {t}"))
                        .collect();
                    pairs.join(" + ")
                };
                for op in operators {
                    measures += 1;
                    let name = format!("dμ{measures}({})", taus.join(", "));
                    let mut parts = vec![String::new(); rank];
                    for (k, a, _) in op.terms() {
                        let c = rename(&op.partial_coefficient(k, a), &tau_ring);
                        let mut monomial = a.as_slice().to_vec();
                        monomial.resize(n, 0);
                        terms.push(SolutionTerm {
                            pos: k + 1,
                            constant: format!("μ{measures}"),
                            coeff: c.render(),
                            monomial: monomial.clone(),
                            exponent: std::iter::repeat_n("0".to_string(), x)
                                .chain(taus.iter().cloned())
                                .collect(),
                        });
                        let neg = c.is_negative();
                        let mag = if neg { c.negate() } else { c };
                        let m = render_monomial(&monomial, &variables);
                        let body = match (mag.is_one(), m.is_empty()) {
                            (true, true) => "1".to_string(),
                            (true, false) => m,
                            (false, true) => mag.render_factor(),
                            (false, false) => format!("{} {m}", mag.render_factor()),
                        };
                        push_signed(&mut parts[k], neg, &body);
                    }
                    let integrand = if rank == 1 {
                        let p = parts.pop().unwrap_or_default();
                        if p == "1" {
                            String::new()
                        } else if p.contains(' ') {
                            format!("({p}) ")
                        } else {
                            format!("{p} ")
                        }
                    } else {
                        let ps: Vec<String> = parts
                            .into_iter()
                            .map(|p| if p.is_empty() { "0".into() } else { p })
                            .collect();
                        format!("({}) ", ps.join(", "))
                    };
                    integrals.push(format!("∫ {integrand}e^({exponent}) {name}"));
                }
            }
        }
    }
    let mut summands = Vec::new();
    if point_parts.iter().any(|p| !p.is_empty()) {
        let parts: Vec<String> = point_parts
            .into_iter()
            .map(|p| if p.is_empty() { "0".into() } else { p })
            .collect();
        summands.push(if rank == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        });
    }
    summands.extend(integrals);
    let text = format!("f({}) = {}", variables.join(", "), summands.join(" + "));
    Ok(SolutionDocument { variables, terms, text })
}

/// The pairs `(monomial, exponent)` appearing in a solution, per position:
/// the shape of the family with the constants forgotten.
pub fn solution_shape(doc: &SolutionDocument) -> Vec<(usize, Vec<u32>, Vec<String>)> {
    let mut v: Vec<(usize, Vec<u32>, Vec<String>)> = doc
        .terms
        .iter()
        .map(|t| (t.pos, t.monomial.clone(), t.exponent.clone()))
        .collect();
    v.sort();
    v.dedup();
    v
}
