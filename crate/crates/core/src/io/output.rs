//! Structured command output and its JSON form.

use serde::{Deserialize, Serialize};

use crate::algebra::poly::render_power_product;
use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{Coeff, Exponents, Monomial, Polynomial, Rational, RingRef};
use crate::noether::dual::alpha_factorial;
use crate::noether::DiffOp;

/// One `c ∂^α e_pos` term. `pos` counts from 1 and `coeff` is the
/// coefficient of `∂^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub pos: usize,
    pub alpha: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub terms: Vec<TermRecord>,
}

impl OperatorRecord {
    pub fn of<C: Coeff>(op: &DiffOp<C>) -> Self {
        let terms = op
            .terms()
            .map(|(k, a, _)| TermRecord {
                pos: k + 1,
                alpha: a.as_slice().to_vec(),
                coeff: op.partial_coefficient(k, a).render(),
            })
            .collect();
        OperatorRecord { terms }
    }

    /// Rebuilds a rational operator in `ring`; `None` when a record does
    /// not fit the ring or a coefficient is not a rational number.
    pub fn to_operator(&self, ring: &RingRef<Rational>) -> Option<DiffOp<Rational>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.pos == 0 || t.pos > ring.rank() || t.alpha.len() != ring.nvars() {
                return None;
            }
            let alpha = Exponents::new(t.alpha.clone());
            let c = parse_rational(&t.coeff)? * alpha_factorial(&alpha);
            terms.push((t.pos - 1, alpha, c));
        }
        DiffOp::from_terms(ring, terms).ok()
    }
}

/// One summand of an exponential solution: `coeff · constant · s^monomial ·
/// e^(exponent · s)` in component `pos` of the solution vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionTerm {
    pub pos: usize,
    pub constant: String,
    pub coeff: String,
    pub monomial: Vec<u32>,
    pub exponent: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub variables: Vec<String>,
    pub terms: Vec<SolutionTerm>,
    pub text: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub staircase: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corners: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_operators: Option<Vec<OperatorRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_operator_text: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<OperatorRecord>>,
    /// Rendered operators, parallel to `operators`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator_text: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<OutputDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolutionDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        OutputDocument {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn set_operators<C: Coeff>(&mut self, ops: &[DiffOp<C>]) {
        self.operators = Some(ops.iter().map(OperatorRecord::of).collect());
        self.operator_text = Some(ops.iter().map(DiffOp::render).collect());
    }

    pub fn set_raw_operators<C: Coeff>(&mut self, ops: &[DiffOp<C>]) {
        self.raw_operators = Some(ops.iter().map(OperatorRecord::of).collect());
        self.raw_operator_text = Some(ops.iter().map(DiffOp::render).collect());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Plain-text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, "");
        out
    }

    fn write_text(&self, out: &mut String, indent: &str) {
        let line = |out: &mut String, s: String| {
            out.push_str(indent);
            out.push_str(&s);
            out.push('\n');
        };
        if let Some(c) = &self.center {
            line(out, format!("center: ({})", c.join(", ")));
        }
        if let Some(m) = &self.method {
            line(out, format!("method: {m}"));
        }
        if let Some(g) = &self.groebner_basis {
            line(out, "groebner basis:".into());
            for p in g {
                line(out, format!("  {p}"));
            }
        }
        if let Some(m) = self.multiplicity {
            line(out, format!("multiplicity: {m}"));
        }
        if let Some(s) = &self.staircase {
            line(out, format!("staircase: {}", s.join(", ")));
        }
        if let Some(s) = &self.corners {
            line(out, format!("corners: {}", s.join(", ")));
        }
        if let Some(nf) = &self.normal_form {
            line(out, format!("normal form: {nf}"));
        }
        if let Some(m) = self.member {
            line(out, format!("member: {m}"));
        }
        if let Some(raw) = &self.raw_operator_text {
            line(out, format!("raw operators: {}", raw.join(", ")));
        }
        if let Some(ops) = &self.operator_text {
            line(out, "operators:".into());
            for op in ops {
                line(out, format!("  {op}"));
            }
        }
        if let Some(comps) = &self.components {
            for (i, c) in comps.iter().enumerate() {
                line(out, format!("component {}:", i + 1));
                c.write_text(out, &format!("{indent}  "));
            }
        }
        if let Some(s) = &self.solution {
            line(out, s.text.clone());
        }
        for d in &self.diagnostics {
            line(out, format!("note: {d}"));
        }
    }
}

/// Error payload printed in JSON mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

/// `x*y` for rank one, `x*y*e2` for modules, `1` or `e1` for constants.
pub fn render_module_term<C: Coeff>(m: &Monomial, ring: &RingRef<C>) -> String {
    let pp = render_power_product(&m.exp, ring.desc.names());
    if ring.rank() == 1 {
        if pp.is_empty() {
            "1".into()
        } else {
            pp
        }
    } else if pp.is_empty() {
        format!("e{}", m.pos + 1)
    } else {
        format!("{pp}*e{}", m.pos + 1)
    }
}

pub fn render_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

pub fn render_polys<C: Coeff>(ps: &[Polynomial<C>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}
