//! Command dispatch for the `noeth` binary.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::Zero;

use super::ep::{emit_ep_solution, ComponentOperators};
use super::output::{render_module_term, render_point, render_polys, ErrorDocument, OutputDocument};
use super::parse::{parse_problem, ParseError, ProblemSpec};
use crate::algebra::{Polynomial, Rational};
use crate::error::Error;
use crate::groebner::{corner_monomials, GroebnerBasis, Staircase};
use crate::noether::dual::same_span;
use crate::noether::posdim::{extend_to_rational_coeffs, noetherian_positive};
use crate::noether::zerodim::{localize, noetherian_operators, Method};

/// What to compute on a parsed problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Request {
    Gb,
    Nf(String),
    Mult,
    Staircase,
    Corners,
    Noether { method: Method, check_all: bool },
    NoetherPosdim,
    Member(String),
    EpSolution,
}

impl Request {
    pub fn name(&self) -> &'static str {
        match self {
            Request::Gb => "gb",
            Request::Nf(_) => "nf",
            Request::Mult => "mult",
            Request::Staircase => "staircase",
            Request::Corners => "corners",
            Request::Noether { .. } => "noether",
            Request::NoetherPosdim => "noether-posdim",
            Request::Member(_) => "member",
            Request::EpSolution => "ep-solution",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("{0}")]
    Input(String),
}

impl CommandError {
    /// 1 for failed preconditions, 2 for unreadable or malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Domain(_) => 1,
            CommandError::Parse(_) | CommandError::Input(_) => 2,
        }
    }

    pub fn document(&self) -> ErrorDocument {
        match self {
            CommandError::Parse(p) => ErrorDocument {
                error: p.message.clone(),
                line: Some(p.line),
                column: Some(p.column),
            },
            other => ErrorDocument {
                error: other.to_string(),
                line: None,
                column: None,
            },
        }
    }
}

type CResult<T> = std::result::Result<T, CommandError>;

/// The generator lists a command acts on: the main ones, or each component.
fn targets(spec: &ProblemSpec) -> Vec<(Vec<Polynomial<Rational>>, Vec<Rational>)> {
    if spec.components.is_empty() {
        vec![(spec.generators.clone(), spec.center_or_origin())]
    } else {
        spec.components
            .iter()
            .map(|c| (c.generators.clone(), c.center.clone()))
            .collect()
    }
}

/// Runs one target through `f` and merges the results into `doc`.
fn per_target(
    spec: &ProblemSpec,
    doc: &mut OutputDocument,
    mut f: impl FnMut(&[Polynomial<Rational>], &[Rational], &mut OutputDocument) -> CResult<()>,
) -> CResult<()> {
    let ts = targets(spec);
    if spec.components.is_empty() {
        let (g, c) = &ts[0];
        f(g, c, doc)
    } else {
        let mut comps = Vec::new();
        for (g, c) in &ts {
            let mut d = OutputDocument::new(&doc.command);
            d.center = Some(render_point(c));
            f(g, c, &mut d)?;
            comps.push(d);
        }
        doc.components = Some(comps);
        Ok(())
    }
}

fn staircase_of(spec: &ProblemSpec, gens: &[Polynomial<Rational>]) -> CResult<(Staircase, Vec<String>, Vec<String>)> {
    let ring = &spec.ring;
    let gb = GroebnerBasis::compute(ring, gens)?;
    if ring.desc.t_count() == 0 {
        let s = gb.staircase()?;
        let corners = corner_monomials(&s, &gb);
        let show = |v: &[crate::algebra::Monomial]| v.iter().map(|m| render_module_term(m, ring)).collect();
        let (a, b) = (show(s.monomials()), show(&corners));
        Ok((s, a, b))
    } else {
        let ext = extend_to_rational_coeffs(&gb)?;
        let s = ext.staircase()?;
        let corners = corner_monomials(&s, &ext);
        let xr = ext.ring();
        let show = |v: &[crate::algebra::Monomial]| v.iter().map(|m| render_module_term(m, xr)).collect();
        let (a, b) = (show(s.monomials()), show(&corners));
        Ok((s, a, b))
    }
}

fn no_parameters(spec: &ProblemSpec, command: &str) -> CResult<()> {
    if spec.ring.desc.t_count() > 0 {
        return Err(Error::Precondition(format!(
            "`{command}` needs a ring without parameters; use noether-posdim"
        ))
        .into());
    }
    Ok(())
}

/// Runs a request on a parsed problem.
pub fn execute(spec: &ProblemSpec, request: &Request) -> CResult<OutputDocument> {
    let ring = &spec.ring;
    let mut doc = OutputDocument::new(request.name());
    match request {
        Request::Gb => per_target(spec, &mut doc, |g, _, d| {
            let gb = GroebnerBasis::compute(ring, g)?;
            d.groebner_basis = Some(render_polys(gb.elements()));
            Ok(())
        })?,
        Request::Nf(text) => {
            let f = spec.parse_element(text)?;
            per_target(spec, &mut doc, |g, _, d| {
                let gb = GroebnerBasis::compute(ring, g)?;
                d.normal_form = Some(gb.normal_form(&f).to_string());
                Ok(())
            })?
        }
        Request::Mult => per_target(spec, &mut doc, |g, _, d| {
            let (s, _, _) = staircase_of(spec, g)?;
            d.multiplicity = Some(s.multiplicity());
            Ok(())
        })?,
        Request::Staircase => per_target(spec, &mut doc, |g, _, d| {
            let (s, shown, _) = staircase_of(spec, g)?;
            d.multiplicity = Some(s.multiplicity());
            d.staircase = Some(shown);
            Ok(())
        })?,
        Request::Corners => per_target(spec, &mut doc, |g, _, d| {
            let (_, _, corners) = staircase_of(spec, g)?;
            d.corners = Some(corners);
            Ok(())
        })?,
        Request::Noether { method, check_all } => {
            no_parameters(spec, "noether")?;
            per_target(spec, &mut doc, |g, c, d| {
                let basis = noetherian_operators(ring, g, c, *method)?;
                let loc = localize(ring, g, c)?;
                d.center = Some(render_point(c));
                d.method = Some(method.name().to_string());
                d.multiplicity = Some(basis.multiplicity);
                d.staircase = Some(
                    loc.staircase
                        .monomials()
                        .iter()
                        .map(|m| render_module_term(m, ring))
                        .collect(),
                );
                d.set_operators(&basis.canonical());
                if *check_all {
                    for other in [Method::Forward, Method::Backward, Method::Linear] {
                        let b = noetherian_operators(ring, g, c, other)?;
                        if !same_span(&b.operators, &basis.operators) {
                            return Err(Error::Precondition(format!(
                                "{} and {} operators span different spaces",
                                method.name(),
                                other.name()
                            ))
                            .into());
                        }
                    }
                    d.diagnostics
                        .push("forward, backward and linear operators span the same space".into());
                }
                Ok(())
            })?
        }
        Request::NoetherPosdim => per_target(spec, &mut doc, |g, c, d| {
            if c.iter().any(|v| !v.is_zero()) {
                return Err(Error::Precondition(
                    "noether-posdim works at the origin; translate the ideal first".into(),
                )
                .into());
            }
            let b = noetherian_positive(ring, g)?;
            d.multiplicity = Some(b.multiplicity);
            d.staircase = Some(
                b.staircase
                    .monomials()
                    .iter()
                    .map(|m| render_module_term(m, b.extended.ring()))
                    .collect(),
            );
            d.set_raw_operators(&b.raw);
            d.set_operators(&b.operators);
            d.diagnostics.push(format!("{} multiplication(s) by t^gamma", b.rounds));
            Ok(())
        })?,
        Request::Member(text) => {
            let f = spec.parse_element(text)?;
            let mut all = true;
            per_target(spec, &mut doc, |g, c, d| {
                let gb = GroebnerBasis::compute(ring, g)?;
                let member = gb.is_member(&f);
                all &= member;
                d.member = Some(member);
                if ring.desc.t_count() == 0 {
                    if let Ok(b) = noetherian_operators(ring, g, c, Method::Forward) {
                        let by_ops = b.annihilates(&f)?;
                        if by_ops != member {
                            d.diagnostics.push("normal form and operators disagree".into());
                        }
                    }
                }
                Ok(())
            })?;
            doc.member = Some(all);
        }
        Request::EpSolution => {
            if spec.components.is_empty() {
                return Err(Error::MissingDecomposition.into());
            }
            let mut comps = Vec::new();
            let mut docs = Vec::new();
            for comp in &spec.components {
                let mut d = OutputDocument::new("noether");
                d.center = Some(render_point(&comp.center));
                if ring.desc.t_count() == 0 {
                    let b = noetherian_operators(ring, &comp.generators, &comp.center, Method::Forward)?;
                    let ops = b.canonical();
                    d.multiplicity = Some(b.multiplicity);
                    d.set_operators(&ops);
                    comps.push(ComponentOperators::Point {
                        center: comp.center.clone(),
                        operators: ops,
                    });
                } else {
                    let b = noetherian_positive(ring, &comp.generators)?;
                    d.multiplicity = Some(b.multiplicity);
                    d.set_operators(&b.operators);
                    comps.push(ComponentOperators::Family { operators: b.operators });
                }
                docs.push(d);
            }
            doc.components = Some(docs);
            doc.solution = Some(emit_ep_solution(ring, &comps, spec.space.as_deref())?);
        }
    }
    Ok(doc)
}

#[derive(Parser, Debug)]
#[command(
    name = "noeth",
    version,
    about = "Noetherian operators of primary ideals and modules"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis.
    Gb { file: PathBuf },
    /// Normal form of a polynomial.
    Nf { poly: String, file: PathBuf },
    /// Multiplicity.
    Mult { file: PathBuf },
    /// Standard monomials.
    Staircase { file: PathBuf },
    /// Maximal standard monomials.
    Corners { file: PathBuf },
    /// Noetherian operators at the center.
    Noether {
        #[arg(long, default_value = "forward")]
        method: Method,
        /// Run every method and check that they agree.
        #[arg(long)]
        check_all: bool,
        file: PathBuf,
    },
    /// Noetherian operators of an ideal in normal position.
    NoetherPosdim { file: PathBuf },
    /// Ideal membership.
    Member { poly: String, file: PathBuf },
    /// General exponential solution from a primary decomposition.
    EpSolution { file: PathBuf },
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments, runs the command, and renders the result.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            };
        }
    };
    let (file, request) = match cli.command {
        Command::Gb { file } => (file, Request::Gb),
        Command::Nf { poly, file } => (file, Request::Nf(poly)),
        Command::Mult { file } => (file, Request::Mult),
        Command::Staircase { file } => (file, Request::Staircase),
        Command::Corners { file } => (file, Request::Corners),
        Command::Noether {
            method,
            check_all,
            file,
        } => (file, Request::Noether { method, check_all }),
        Command::NoetherPosdim { file } => (file, Request::NoetherPosdim),
        Command::Member { poly, file } => (file, Request::Member(poly)),
        Command::EpSolution { file } => (file, Request::EpSolution),
    };
    let result = std::fs::read_to_string(&file)
        .map_err(|e| CommandError::Input(format!("cannot read {}: {e}", file.display())))
        .and_then(|text| Ok(parse_problem(&text)?))
        .and_then(|spec| execute(&spec, &request));
    match result {
        Ok(doc) => Outcome {
            stdout: if cli.json { doc.to_json() + "\n" } else { doc.to_text() },
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                Outcome {
                    stdout: serde_json::to_string(&e.document()).expect("plain data") + "\n",
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                    code,
                }
            }
        }
    }
}
