mod common;

use std::collections::BTreeMap;

use common::*;
use noeth::algebra::monomial::exponents_below;
use noeth::algebra::rational::{factorial, parse_rational, rat, ratio};
use noeth::algebra::{Exponents, Monomial, Polynomial, Rational, RingRef};
use noeth::groebner::{corner_monomials, reduce, s_polynomial, GroebnerBasis};
use noeth::io::{emit_ep_solution, ComponentOperators};
use noeth::linalg;
use noeth::noether::dual::{coordinates, dual_of_polynomial, same_span};
use noeth::noether::posdim::{
    check_normal_position, extend_to_rational_coeffs, minimal_leading_terms, noetherian_positive, rational_coeff_basis,
};
use noeth::noether::zerodim::{backward_accumulate, ideal_from_conditions, localize, noetherian_operators};
use noeth::noether::{DiffOp, Method};
use num_traits::Zero;
use rand::Rng;

/// Builds an operator from `(position, α, coefficient of ∂^α)` triples.
fn op(ring: &RingRef<Rational>, terms: &[(usize, &[u32], Rational)]) -> DiffOp<Rational> {
    let terms = terms
        .iter()
        .map(|(k, a, c)| {
            let alpha = Exponents::new(a.to_vec());
            let scale: Rational = alpha.as_slice().iter().map(|&e| factorial(e)).product();
            (*k, alpha, c * scale)
        })
        .collect();
    DiffOp::from_terms(ring, terms).unwrap()
}

fn monic_set(ps: &[Poly]) -> Vec<String> {
    let mut v: Vec<String> = ps.iter().map(|p| p.monic().to_string()).collect();
    v.sort();
    v
}

fn parsed(spec: &noeth::io::ProblemSpec, texts: &[&str]) -> Vec<Poly> {
    texts.iter().map(|t| spec.parse_element(t).unwrap()).collect()
}

fn staircase_strings(gb: &GroebnerBasis<Rational>) -> Vec<String> {
    let ring = gb.ring();
    gb.staircase()
        .unwrap()
        .monomials()
        .iter()
        .map(|m| noeth::io::output::render_module_term(m, ring))
        .collect()
}

#[test]
fn criterion_01_parabola() {
    let run = || -> Result<(), String> {
        let spec = problem(PARABOLA);
        let r = &spec.ring;
        let basis = noetherian_operators(r, &spec.generators, &spec.center_or_origin(), Method::Forward)
            .map_err(|e| e.to_string())?;
        let expected = vec![
            op(r, &[(0, &[0, 0], rat(1))]),
            op(r, &[(0, &[1, 0], rat(1))]),
            op(r, &[(0, &[0, 1], rat(1)), (0, &[2, 0], ratio(1, 2))]),
            op(r, &[(0, &[1, 1], rat(1)), (0, &[3, 0], ratio(1, 6))]),
        ];
        let got = basis.canonical();
        ensure(got == expected, || format!("operators {:?}", rendered(&got)))?;
        ensure(basis.multiplicity == 4, || {
            format!("multiplicity {}", basis.multiplicity)
        })?;
        let stairs = staircase_strings(&basis.source);
        ensure(stairs == ["1", "x", "y", "x*y"], || format!("staircase {stairs:?}"))
    };
    report(1, "parabola operators, multiplicity and staircase", run());
}

#[test]
fn criterion_02_backward() {
    let run = || -> Result<(), String> {
        let spec = problem(THREE);
        let r = &spec.ring;
        let origin = spec.center_or_origin();
        let loc = localize(r, &spec.generators, &origin).map_err(|e| e.to_string())?;
        let corners = corner_monomials(&loc.staircase, &loc.gb);
        let names: Vec<String> = corners
            .iter()
            .map(|m| noeth::io::output::render_module_term(m, r))
            .collect();
        ensure(names == ["x*y*z"], || format!("corners {names:?}"))?;
        let expected = op(
            r,
            &[
                (0, &[3, 1, 0], ratio(1, 6)),
                (0, &[1, 3, 0], ratio(1, 6)),
                (0, &[1, 1, 1], rat(1)),
            ],
        );
        let accumulated = dual_of_polynomial(&backward_accumulate(&loc.gb, &corners[0], loc.multiplicity()));
        ensure(accumulated == expected, || {
            format!("accumulated corner operator {accumulated}")
        })?;
        let backward =
            noetherian_operators(r, &spec.generators, &origin, Method::Backward).map_err(|e| e.to_string())?;
        ensure(backward.operators.contains(&expected), || {
            format!("corner operator missing from {:?}", rendered(&backward.operators))
        })?;
        let forward = noetherian_operators(r, &spec.generators, &origin, Method::Forward).map_err(|e| e.to_string())?;
        let cols: Vec<Monomial> = exponents_below(3, 8).into_iter().map(|e| Monomial::new(0, e)).collect();
        let rows = |ops: &[DiffOp<Rational>]| ops.iter().map(|o| coordinates(o, &cols)).collect::<Vec<_>>();
        let (b, f) = (rows(&backward.operators), rows(&forward.operators));
        let both: Vec<Vec<Rational>> = b.iter().chain(f.iter()).cloned().collect();
        ensure(
            linalg::rank(&b) == 8 && linalg::rank(&f) == 8 && linalg::rank(&both) == 8,
            || {
                format!(
                    "ranks {} {} {}",
                    linalg::rank(&b),
                    linalg::rank(&f),
                    linalg::rank(&both)
                )
            },
        )
    };
    report(2, "corner xyz, corner operator, backward spans forward", run());
}

#[test]
fn criterion_03_module() {
    let run = || -> Result<(), String> {
        let spec = problem(MODULE);
        let r = &spec.ring;
        let gb = GroebnerBasis::compute(r, &spec.generators).map_err(|e| e.to_string())?;
        let expected_gb = parsed(&spec, &["[x, 1]", "[y, x]", "[0, y]", "[y^2, 0]"]);
        ensure(monic_set(gb.elements()) == monic_set(&expected_gb), || {
            format!("basis {:?}", rendered(gb.elements()))
        })?;
        let stairs = staircase_strings(&gb);
        ensure(stairs == ["e1", "e2", "y*e1"], || format!("staircase {stairs:?}"))?;
        let basis = noetherian_operators(r, &spec.generators, &spec.center_or_origin(), Method::Forward)
            .map_err(|e| e.to_string())?;
        ensure(basis.multiplicity == 3, || {
            format!("multiplicity {}", basis.multiplicity)
        })?;
        let expected = vec![
            op(r, &[(0, &[0, 0], rat(1))]),
            op(r, &[(0, &[1, 0], rat(-1)), (1, &[0, 0], rat(1))]),
            op(
                r,
                &[(0, &[2, 0], ratio(1, 2)), (0, &[0, 1], rat(1)), (1, &[1, 0], rat(-1))],
            ),
        ];
        let got = basis.canonical();
        ensure(got == expected, || format!("operators {:?}", rendered(&got)))
    };
    report(3, "module basis, staircase and operators", run());
}

/// `(pos, s-monomial, exponent)` of one solution term.
type SolutionKey = (usize, Vec<u32>, Vec<String>);
/// Solution terms grouped by constant.
type Family = Vec<BTreeMap<SolutionKey, Rational>>;

fn family_rows(f: &Family) -> Vec<Vec<Rational>> {
    let keys: std::collections::BTreeSet<_> = f.iter().flat_map(|m| m.keys().cloned()).collect();
    f.iter()
        .map(|m| {
            keys.iter()
                .map(|k| m.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect()
}

#[test]
fn criterion_04_pde() {
    let run = || -> Result<(), String> {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../problems/pde.noeth"))
            .map_err(|e| e.to_string())?;
        let spec = problem(&text);
        let r = &spec.ring;
        ensure(spec.components.len() == 2, || "two components".into())?;
        let mut comps = Vec::new();
        let mut per_component = Vec::new();
        for c in &spec.components {
            let center = c.center.clone();
            let b = noetherian_operators(r, &c.generators, &center, Method::Forward).map_err(|e| e.to_string())?;
            per_component.push(b.canonical());
            comps.push(ComponentOperators::Point {
                center,
                operators: b.canonical(),
            });
        }
        let first = vec![
            op(r, &[(0, &[0, 0], rat(1))]),
            op(r, &[(0, &[1, 0], rat(-1)), (1, &[0, 0], rat(1))]),
            op(
                r,
                &[(0, &[2, 0], ratio(1, 2)), (0, &[0, 1], rat(1)), (1, &[1, 0], rat(-1))],
            ),
        ];
        ensure(per_component[0] == first, || {
            format!("component at origin {:?}", rendered(&per_component[0]))
        })?;
        // Operators are determined up to their span; each listed one must be
        // a multiple of one we return.
        let second = vec![
            op(r, &[(0, &[0, 0], rat(1))]),
            op(r, &[(0, &[1, 0], rat(1)), (1, &[0, 0], rat(-1))]),
        ];
        ensure(same_span(&per_component[1], &second), || {
            format!("component at (1, 0) {:?}", rendered(&per_component[1]))
        })?;
        for e in &second {
            let proportional = per_component[1]
                .iter()
                .any(|g| same_span(std::slice::from_ref(g), std::slice::from_ref(e)));
            ensure(proportional, || format!("{e} is not a multiple of a returned operator"))?;
        }

        let names = spec.space.clone().unwrap();
        let doc = emit_ep_solution(r, &comps, Some(&names)).map_err(|e| e.to_string())?;
        let mut ours: BTreeMap<String, BTreeMap<SolutionKey, Rational>> = BTreeMap::new();
        for t in &doc.terms {
            let c = parse_rational(&t.coeff).ok_or("coefficient")?;
            *ours
                .entry(t.constant.clone())
                .or_default()
                .entry((t.pos, t.monomial.clone(), t.exponent.clone()))
                .or_insert_with(Rational::zero) += c;
        }
        let o = || vec!["0".to_string(), "0".to_string()];
        let p = || vec!["1".to_string(), "0".to_string()];
        let entry = |pos: usize, m: [u32; 2], e: Vec<String>, c: Rational| ((pos, m.to_vec(), e), c);
        // A - Bz + 1/2 Cz^2 + Ct + De^z + Eze^z,  B - Cz - Ee^z
        let expected: Family = vec![
            [entry(1, [0, 0], o(), rat(1))].into_iter().collect(),
            [entry(1, [1, 0], o(), rat(-1)), entry(2, [0, 0], o(), rat(1))]
                .into_iter()
                .collect(),
            [
                entry(1, [2, 0], o(), ratio(1, 2)),
                entry(1, [0, 1], o(), rat(1)),
                entry(2, [1, 0], o(), rat(-1)),
            ]
            .into_iter()
            .collect(),
            [entry(1, [0, 0], p(), rat(1))].into_iter().collect(),
            [entry(1, [1, 0], p(), rat(1)), entry(2, [0, 0], p(), rat(-1))]
                .into_iter()
                .collect(),
        ];
        let ours: Family = ours.into_values().collect();
        ensure(ours.len() == expected.len(), || format!("{} constants", ours.len()))?;
        let mut shapes: Vec<_> = ours.iter().flat_map(|m| m.keys().cloned()).collect();
        shapes.sort();
        shapes.dedup();
        let mut expected_shapes: Vec<_> = expected.iter().flat_map(|m| m.keys().cloned()).collect();
        expected_shapes.sort();
        expected_shapes.dedup();
        ensure(shapes == expected_shapes, || format!("terms {shapes:?}"))?;
        let mut joint = ours.clone();
        joint.extend(expected.iter().cloned());
        let rows = family_rows(&joint);
        let (a, b) = rows.split_at(ours.len());
        ensure(
            linalg::rank(a) == 5 && linalg::rank(b) == 5 && linalg::rank(&rows) == 5,
            || format!("solution families differ: {}", doc.text),
        )
    };
    report(4, "component operators and exponential solution family", run());
}

#[test]
fn criterion_05_positive_dimension() {
    let run = || -> Result<(), String> {
        let spec = problem(LINE);
        let r = &spec.ring;
        let gb = GroebnerBasis::compute(r, &spec.generators).map_err(|e| e.to_string())?;
        let expected = parsed(&spec, &["x^2", "x*y", "y^2", "-x*t + y"]);
        ensure(monic_set(gb.elements()) == monic_set(&expected), || {
            format!("basis {:?}", rendered(gb.elements()))
        })?;
        let basis = noetherian_positive(r, &spec.generators).map_err(|e| e.to_string())?;
        ensure(basis.multiplicity == 2, || {
            format!("multiplicity {}", basis.multiplicity)
        })?;
        let raw = rendered(&basis.raw);
        ensure(raw == ["t", "dx + t dy"], || format!("raw {raw:?}"))?;
        let cleaned = rendered(&basis.operators);
        ensure(cleaned == ["1", "dx + t dy"], || format!("cleaned {cleaned:?}"))?;
        let spec = problem(LINE_Z);
        let basis = noetherian_positive(&spec.ring, &spec.generators).map_err(|e| e.to_string())?;
        let cleaned = rendered(&basis.operators);
        ensure(cleaned == ["1", "dx + z dy"], || format!("z variant {cleaned:?}"))
    };
    report(5, "positive-dimensional basis and operators", run());
}

#[test]
fn criterion_06_not_normal_position() {
    let run = || -> Result<(), String> {
        let deglex = problem("ring x | t; order deglex; ideal x^2 - t, x*t - 1;");
        let gb = GroebnerBasis::compute(&deglex.ring, &deglex.generators).map_err(|e| e.to_string())?;
        let expected = parsed(&deglex, &["x^2 - t", "x*t - 1", "t^2 - x"]);
        ensure(monic_set(gb.elements()) == monic_set(&expected), || {
            format!("deglex {:?}", rendered(gb.elements()))
        })?;
        let lex = problem("ring x | t; order lex; ideal x^2 - t, x*t - 1;");
        let gb = GroebnerBasis::compute(&lex.ring, &lex.generators).map_err(|e| e.to_string())?;
        let expected = parsed(&lex, &["x - t^2", "t^3 - 1"]);
        ensure(monic_set(gb.elements()) == monic_set(&expected), || {
            format!("lex {:?}", rendered(gb.elements()))
        })?;
        let report = check_normal_position(&lex.ring, &lex.generators).map_err(|e| e.to_string())?;
        ensure(!report.contraction_trivial, || "contraction reported trivial".into())?;
        let witness = parsed(&lex, &["t^3 - 1"]);
        ensure(monic_set(&report.witnesses) == monic_set(&witness), || {
            format!("witnesses {:?}", rendered(&report.witnesses))
        })?;
        ensure(noetherian_positive(&lex.ring, &lex.generators).is_err(), || {
            "operators computed anyway".into()
        })
    };
    report(6, "normal position rejected with witness t^3 - 1", run());
}

/// `β e_k` from a staircase, as a polynomial.
fn staircase_element(ring: &RingRef<Rational>, m: &Monomial, c: i64) -> Poly {
    Polynomial::monomial(ring, m.clone(), rat(c))
}

fn random_vector(rng: &mut rand_chacha::ChaCha8Rng, ring: &RingRef<Rational>, max: u32) -> Poly {
    let mut acc = Polynomial::zero(ring);
    for k in 0..ring.rank() {
        let p = random_poly(rng, ring, 0, max, 4);
        acc = acc.add(&p.embed(ring, k)).unwrap();
    }
    acc
}

#[test]
fn criterion_07_membership() {
    let run = || -> Result<(), String> {
        let mut fixtures = golden_fixtures();
        fixtures.extend(random_fixtures());
        ensure(fixtures.len() == 5, || "five ideals".into())?;
        let mut discrepancies = Vec::new();
        for (i, fx) in fixtures.iter().enumerate() {
            let mut g = rng(1000 + i as u64);
            let basis =
                noetherian_operators(&fx.ring, &fx.gens, &fx.center, Method::Forward).map_err(|e| e.to_string())?;
            let mu = basis.multiplicity as u32;
            let stairs = fx.origin_basis().staircase().unwrap();
            ensure(!fx.name.starts_with("random") || stairs.multiplicity() <= 12, || {
                format!("{} has multiplicity {}", fx.name, stairs.multiplicity())
            })?;
            let gb = GroebnerBasis::compute(&fx.ring, &fx.gens).map_err(|e| e.to_string())?;
            for n in 0..200 {
                // Known members, known non-members, then unconstrained samples.
                let (f, truth) = match n {
                    0..=79 => (random_member(&mut g, &fx.gens, 2), Some(true)),
                    80..=159 => {
                        let beta = &stairs.monomials()[g.gen_range(0..stairs.multiplicity())];
                        let c = [1, -1, 2, -3][n % 4];
                        let f = random_member(&mut g, &fx.origin_gens, 2)
                            .add(&staircase_element(&fx.ring, beta, c))
                            .unwrap();
                        (fx.to_center(&f), Some(false))
                    }
                    _ => (random_vector(&mut g, &fx.ring, mu + 2), None),
                };
                let nf_zero = gb.normal_form(&f).is_zero();
                let killed = basis.annihilates(&f).map_err(|e| e.to_string())?;
                if nf_zero != killed || truth.is_some_and(|t| t != nf_zero) {
                    discrepancies.push(format!(
                        "{} sample {n}: nf zero {nf_zero}, annihilated {killed}, truth {truth:?}",
                        fx.name
                    ));
                }
            }
        }
        ensure(discrepancies.is_empty(), || discrepancies.join("; "))
    };
    report(7, "normal form vanishes exactly when every operator annihilates", run());
}

#[test]
fn criterion_08_methods_agree() {
    let run = || -> Result<(), String> {
        let mut bad = Vec::new();
        for fx in all_zero_dim_fixtures() {
            let get =
                |m| noetherian_operators(&fx.ring, &fx.gens, &fx.center, m).map_err(|e| format!("{}: {e}", fx.name));
            let f = get(Method::Forward)?;
            let b = get(Method::Backward)?;
            let l = get(Method::Linear)?;
            if !same_span(&f.operators, &b.operators) || !same_span(&f.operators, &l.operators) {
                bad.push(fx.name.clone());
            }
        }
        ensure(bad.is_empty(), || format!("spans differ on {bad:?}"))
    };
    report(8, "forward, backward and linear spans agree", run());
}

fn closed_under_sigma(ops: &[DiffOp<Rational>], cols: &[Monomial]) -> bool {
    let rows: Vec<Vec<Rational>> = ops.iter().map(|o| coordinates(o, cols)).collect();
    let base = linalg::rank(&rows);
    let n = ops.first().map_or(0, |o| o.ring().nvars());
    ops.iter().all(|o| {
        (0..n).all(|j| {
            let mut with = rows.clone();
            with.push(coordinates(&o.sigma(j), cols));
            linalg::rank(&with) == base
        })
    })
}

fn groebner_invariants(gb: &GroebnerBasis<Rational>, samples: &[Poly]) -> Result<(), String> {
    let els = gb.elements();
    for (i, a) in els.iter().enumerate() {
        for b in &els[i + 1..] {
            if a.leading_term().unwrap().pos() != b.leading_term().unwrap().pos() {
                continue;
            }
            let r = reduce(&s_polynomial(a, b), els);
            ensure(r.is_zero(), || format!("S({a}, {b}) reduces to {r}"))?;
        }
    }
    for f in samples {
        let nf = gb.normal_form(f);
        ensure(gb.normal_form(&nf) == nf, || {
            format!("normal form of {f} is not stable")
        })?;
        ensure(gb.is_member(&f.sub(&nf).unwrap()), || {
            format!("{f} minus its normal form is not a member")
        })?;
    }
    Ok(())
}

#[test]
fn criterion_09_invariants() {
    let run = || -> Result<(), String> {
        for (i, fx) in all_zero_dim_fixtures().iter().enumerate() {
            let ctx = |e: String| format!("{}: {e}", fx.name);
            let gb = fx.origin_basis();
            let stairs = gb.staircase().unwrap();
            let mu = stairs.multiplicity();
            let n = fx.ring.nvars();
            // Brute-force staircase: every monomial below the bound that no
            // leading term divides.
            let lts = gb.leading_monomials();
            let mut brute: Vec<Monomial> = (0..fx.ring.rank())
                .flat_map(|k| {
                    exponents_below(n, mu as u32 + 1)
                        .into_iter()
                        .map(move |e| Monomial::new(k, e))
                })
                .filter(|m| !lts.iter().any(|l| l.divides(m)))
                .collect();
            brute.sort();
            let mut listed = stairs.monomials().to_vec();
            listed.sort();
            ensure(brute == listed, || ctx(format!("staircase {listed:?} vs {brute:?}")))?;
            for m in stairs.monomials() {
                for v in 0..n {
                    if m.exp.get(v) > 0 {
                        let down = Monomial::new(m.pos, m.exp.with(v, m.exp.get(v) - 1));
                        ensure(stairs.contains(&down), || ctx(format!("{down:?} missing below {m:?}")))?;
                    }
                }
            }
            let cols: Vec<Monomial> = (0..fx.ring.rank())
                .flat_map(|k| {
                    exponents_below(n, mu as u32)
                        .into_iter()
                        .map(move |e| Monomial::new(k, e))
                })
                .collect();
            for m in [Method::Forward, Method::Backward, Method::Linear] {
                let b = noetherian_operators(&fx.ring, &fx.gens, &fx.center, m).map_err(|e| ctx(e.to_string()))?;
                ensure(b.operators.len() == mu, || {
                    ctx(format!("{} gives {} operators", m.name(), b.operators.len()))
                })?;
                ensure(b.operators.iter().all(|o| (o.degree() as usize) < mu), || {
                    ctx(format!("{} degree", m.name()))
                })?;
                ensure(closed_under_sigma(&b.operators, &cols), || {
                    ctx(format!("{} not closed", m.name()))
                })?;
            }
            let mut g = rng(2000 + i as u64);
            let samples: Vec<Poly> = (0..20)
                .map(|_| random_vector(&mut g, &fx.ring, mu as u32 + 2))
                .collect();
            groebner_invariants(&gb, &samples).map_err(ctx)?;
        }
        for text in [LINE, LINE_Z, "ring x, y | t; order lex; ideal x^3, y - t^2*x;"] {
            let spec = problem(text);
            let r = &spec.ring;
            let gb = GroebnerBasis::compute(r, &spec.generators).map_err(|e| e.to_string())?;
            let mut g = rng(3000);
            let samples: Vec<Poly> = (0..20).map(|_| random_poly(&mut g, r, 0, 4, 4)).collect();
            groebner_invariants(&gb, &samples)?;
            let np = check_normal_position(r, &spec.generators).map_err(|e| e.to_string())?;
            ensure(np.ok() && np.supported_at_origin, || {
                format!("{text} not in normal position")
            })?;
            let extended = extend_to_rational_coeffs(&gb).map_err(|e| e.to_string())?;
            let scratch = rational_coeff_basis(r, &spec.generators).map_err(|e| e.to_string())?;
            let (a, b) = (minimal_leading_terms(&extended), minimal_leading_terms(&scratch));
            ensure(a == b, || format!("{text}: leading terms {a:?} vs {b:?}"))?;
        }
        Ok(())
    };
    report(9, "structural invariants and leading-term stability", run());
}

#[test]
fn criterion_10_round_trip() {
    let run = || -> Result<(), String> {
        let mut fixtures = golden_fixtures();
        fixtures.push(Fixture::from_text("shifted module", SHIFTED_MODULE));
        for fx in fixtures {
            let b = noetherian_operators(&fx.ring, &fx.gens, &fx.center, Method::Forward).map_err(|e| e.to_string())?;
            let back = ideal_from_conditions(&b.operators, b.multiplicity as u32).map_err(|e| e.to_string())?;
            let gb = fx.origin_basis();
            ensure(back == gb.elements(), || {
                format!("{}: {:?} vs {:?}", fx.name, rendered(&back), rendered(gb.elements()))
            })?;
        }
        Ok(())
    };
    report(10, "conditions give back the reduced basis", run());
}
