#![allow(dead_code)]

use std::io::Write;

use noeth::algebra::monomial::exponents_below;
use noeth::algebra::rational::rat;
use noeth::algebra::{Exponents, Monomial, Polynomial, Rational, RingRef, Term};
use noeth::groebner::GroebnerBasis;
use noeth::io::{parse_problem, ProblemSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Poly = Polynomial<Rational>;

pub fn problem(text: &str) -> ProblemSpec {
    parse_problem(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Writes straight to the process stdout so the line shows up even when
/// the harness captures `println!`.
pub fn report(criterion: u32, label: &str, result: Result<(), String>) {
    let line = match &result {
        Ok(()) => format!("criterion {criterion:>2}: PASS  {label}"),
        Err(e) => format!("criterion {criterion:>2}: FAIL  {label}: {e}"),
    };
    let mut out = std::io::stdout();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    if let Err(e) = result {
        panic!("criterion {criterion} failed: {e}");
    }
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random scalar polynomial with terms of degree in `min..=max`.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRef<Rational>, min: u32, max: u32, nterms: usize) -> Poly {
    let n = ring.nvars();
    let pool: Vec<Exponents> = exponents_below(n, max + 1)
        .into_iter()
        .filter(|e| e.degree() >= min)
        .collect();
    let terms = (0..nterms)
        .map(|_| {
            let e = pool[rng.gen_range(0..pool.len())].clone();
            let c = rng.gen_range(-5i64..=5);
            Term::new(0, e, rat(c))
        })
        .collect();
    Polynomial::new(ring.with_rank(1), terms).unwrap()
}

/// A random element of the submodule generated by `gens`.
pub fn random_member(rng: &mut ChaCha8Rng, gens: &[Poly], max_deg: u32) -> Poly {
    let ring = gens[0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for g in gens {
        let h = random_poly(rng, &ring, 0, max_deg, 3);
        acc = acc.add(&h.mul(g).unwrap()).unwrap();
    }
    acc
}

/// A zero-dimensional primary ideal or module at a rational point, with the
/// same data moved to the origin.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub ring: RingRef<Rational>,
    pub gens: Vec<Poly>,
    pub center: Vec<Rational>,
    pub origin_gens: Vec<Poly>,
}

impl Fixture {
    pub fn from_text(name: &str, text: &str) -> Fixture {
        let spec = problem(text);
        let center = spec.center_or_origin();
        let origin_gens = spec
            .generators
            .iter()
            .map(|g| g.substitute_affine(&center).unwrap())
            .collect();
        Fixture {
            name: name.into(),
            ring: spec.ring,
            gens: spec.generators,
            center,
            origin_gens,
        }
    }

    pub fn origin_basis(&self) -> GroebnerBasis<Rational> {
        GroebnerBasis::compute(&self.ring, &self.origin_gens).unwrap()
    }

    /// Moves a polynomial written around the origin to the center.
    pub fn to_center(&self, f: &Poly) -> Poly {
        let back: Vec<Rational> = self.center.iter().map(|c| -c).collect();
        f.substitute_affine(&back).unwrap()
    }
}

pub const PARABOLA: &str = "ring x, y; order deglex; ideal y^2, x^2 - y;";
pub const THREE: &str = "ring x, y, z; order deglex; ideal x^2 - z, y^2 - z, z^2;";
pub const MODULE: &str = "ring x, y; order lex; module_order top; module [x, 1], [y, x], [0, y];";
pub const SHIFTED_MODULE: &str =
    "ring x, y; order lex; module_order top; module [x - 1, 1], [y, 0], [y, x - 1]; center 1, 0;";
pub const LINE: &str = "ring x, y | t; order lex; ideal x^2, y^2, -x*t + y;";
pub const LINE_Z: &str = "ring x, y | z; order lex; ideal x^2, y^2, -x*z + y;";

pub fn golden_fixtures() -> Vec<Fixture> {
    vec![
        Fixture::from_text("parabola", PARABOLA),
        Fixture::from_text("three variables", THREE),
        Fixture::from_text("module", MODULE),
    ]
}

/// `⟨g1, g2, m^k⟩` with random `g_i` in the maximal ideal, moved to a
/// random point. It is primary to that point because it contains a power
/// of the maximal ideal there and sits inside it.
pub fn random_fixture(seed: u64, names: &[&str], k: u32, max_mu: usize) -> Fixture {
    let mut r = rng(seed);
    for _ in 0..100 {
        let header = format!("ring {}; order degrevlex; ideal {};", names.join(", "), names[0]);
        let spec = problem(&header);
        let ring = spec.ring.clone();
        let n = ring.nvars();
        let mut origin_gens = vec![
            random_poly(&mut r, &ring, 1, k - 1, 3),
            random_poly(&mut r, &ring, 1, k - 1, 3),
        ];
        for e in exponents_below(n, k + 1).into_iter().filter(|e| e.degree() == k) {
            origin_gens.push(Polynomial::monomial(&ring, Monomial::new(0, e), rat(1)));
        }
        let gb = GroebnerBasis::compute(&ring, &origin_gens).unwrap();
        let mu = gb.staircase().unwrap().multiplicity();
        if mu < 3 || mu > max_mu {
            continue;
        }
        let center: Vec<Rational> = (0..n).map(|_| rat(r.gen_range(-2i64..=2))).collect();
        let back: Vec<Rational> = center.iter().map(|c| -c).collect();
        let gens = origin_gens
            .iter()
            .map(|g| g.substitute_affine(&back).unwrap())
            .collect();
        return Fixture {
            name: format!("random seed {seed}"),
            ring,
            gens,
            center,
            origin_gens,
        };
    }
    panic!("no suitable random ideal for seed {seed}");
}

pub fn random_fixtures() -> Vec<Fixture> {
    vec![
        random_fixture(7, &["x", "y"], 4, 12),
        random_fixture(11, &["x", "y", "z"], 3, 12),
    ]
}

pub fn all_zero_dim_fixtures() -> Vec<Fixture> {
    let mut v = golden_fixtures();
    v.push(Fixture::from_text("shifted module", SHIFTED_MODULE));
    v.extend(random_fixtures());
    v
}

pub fn rendered<T: std::fmt::Display>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}
