//! Problem files.
//!
//! ```text
//! ring x, y | t;
//! order lex;
//! module_order top;
//! ideal x^2, y^2, -x*t + y;
//! center 0, 0, 0;
//! ```
//!
//! Clauses end with `;` and `#` starts a comment. Instead of `ideal` a file
//! may give `module [f1, f2], ...;` or a primary decomposition
//! `components { module ...; center 1, 0; } { ... };`. `space z, t;` names
//! the variables used when printing exponential solutions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Exponents, PolyRing, Polynomial, Rational, RingDescriptor, RingRef, Term};
use crate::order::{ModuleOrder, Precedence, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// One primary component with its own point.
#[derive(Clone, Debug)]
pub struct Component {
    pub generators: Vec<Polynomial<Rational>>,
    pub center: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub ring: RingRef<Rational>,
    pub generators: Vec<Polynomial<Rational>>,
    pub center: Option<Vec<Rational>>,
    pub components: Vec<Component>,
    /// Names of the solution variables, when given.
    pub space: Option<Vec<String>>,
}

impl ProblemSpec {
    /// The declared center, or the origin.
    pub fn center_or_origin(&self) -> Vec<Rational> {
        self.center
            .clone()
            .unwrap_or_else(|| vec![Rational::zero(); self.ring.nvars()])
    }

    /// Parses a polynomial or module vector in this problem's ring.
    pub fn parse_element(&self, text: &str) -> PResult<Polynomial<Rational>> {
        let mut p = Parser::new(text)?;
        let names = self.ring.desc.names().to_vec();
        let raw = if p.at(&Tok::LBracket) {
            p.vector(&names)?
        } else {
            vec![p.expr(&names)?]
        };
        p.expect_end()?;
        let pos = p.here();
        build(&self.ring, &raw, pos)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    LBracket,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> PResult<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(s)
        } else if "+-*/^(),;|{}]".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else if c == '[' {
            chars.next();
            column += 1;
            Tok::LBracket
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// A polynomial as a coefficient map over the ring's variables, before the
/// final order and rank are known.
type Raw = Vec<(Exponents, Rational)>;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.column)
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn at_sym(&self, c: char) -> bool {
        self.at(&Tok::Sym(c))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::LBracket => "`[`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.at_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn expect_end(&self) -> PResult<()> {
        if self.at(&Tok::End) {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn names(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn rational(&mut self) -> PResult<Rational> {
        let neg = if self.at_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return self.error(format!("expected a number, found {}", self.describe()));
        };
        self.bump();
        let mut q = Rational::from_integer(n);
        if self.at_sym('/') {
            self.bump();
            let Tok::Int(d) = self.peek().clone() else {
                return self.error(format!("expected a denominator, found {}", self.describe()));
            };
            if d.is_zero() {
                return self.error("zero denominator");
            }
            self.bump();
            q /= Rational::from_integer(d);
        }
        Ok(if neg { -q } else { q })
    }

    fn order(&mut self) -> PResult<TermOrder> {
        let name = self.ident()?;
        match name.as_str() {
            "lex" => Ok(TermOrder::Lex),
            "deglex" => Ok(TermOrder::DegLex),
            "degrevlex" => Ok(TermOrder::DegRevLex),
            "product" => {
                self.expect_sym('(')?;
                let x = self.order()?;
                self.expect_sym(',')?;
                let t = self.order()?;
                self.expect_sym(')')?;
                // the split is fixed once the ring is known
                TermOrder::product(x, t, 0).or_else(|e| self.error(e.to_string()))
            }
            other => self.error(format!("unknown ordering `{other}`")),
        }
    }

    fn expr(&mut self, names: &[String]) -> PResult<Raw> {
        let mut acc = if self.at_sym('-') {
            self.bump();
            negate(&self.product(names)?)
        } else {
            self.product(names)?
        };
        loop {
            let sign = if self.at_sym('+') {
                '+'
            } else if self.at_sym('-') {
                '-'
            } else {
                return Ok(acc);
            };
            let at = self.here();
            self.bump();
            if !self.starts_factor() {
                return Err(err_at(at, format!("`{sign}` is missing its right operand")));
            }
            let rhs = self.product(names)?;
            acc = if sign == '+' {
                add(&acc, &rhs)
            } else {
                add(&acc, &negate(&rhs))
            };
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::Sym('('))
    }

    fn product(&mut self, names: &[String]) -> PResult<Raw> {
        let mut acc = self.power(names)?;
        loop {
            if self.at_sym('*') {
                self.bump();
                let rhs = self.power(names)?;
                acc = mul(&acc, &rhs);
            } else if self.at_sym('/') {
                self.bump();
                let (line, column) = self.here();
                let rhs = self.power(names)?;
                let c = match rhs.as_slice() {
                    [(e, c)] if e.is_one() => c.clone(),
                    _ => {
                        return Err(ParseError {
                            line,
                            column,
                            message: "division is only allowed by a nonzero constant".into(),
                        })
                    }
                };
                let inv = c.recip();
                acc = acc.into_iter().map(|(e, v)| (e, v * &inv)).collect();
            } else if self.starts_factor() {
                let rhs = self.power(names)?;
                acc = mul(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, names: &[String]) -> PResult<Raw> {
        let base = self.atom(names)?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        self.bump();
        let Tok::Int(n) = self.peek().clone() else {
            return self.error(format!(
                "malformed exponent: expected a non-negative integer, found {}",
                self.describe()
            ));
        };
        let Ok(e) = u32::try_from(n) else {
            return self.error("exponent too large");
        };
        self.bump();
        let n = names.len();
        let mut acc: Raw = vec![(Exponents::zero(n), Rational::one())];
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self, names: &[String]) -> PResult<Raw> {
        let n = names.len();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(constant(n, Rational::from_integer(v)))
            }
            Tok::Ident(name) => {
                let Some(i) = names.iter().position(|s| *s == name) else {
                    return self.error(format!("unknown variable `{name}`"));
                };
                self.bump();
                Ok(vec![(Exponents::unit(n, i), Rational::one())])
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr(names)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            _ => self.error(format!("expected a term, found {}", self.describe())),
        }
    }

    fn vector(&mut self, names: &[String]) -> PResult<Vec<Raw>> {
        if !self.at(&Tok::LBracket) {
            return self.error(format!("expected `[`, found {}", self.describe()));
        }
        self.bump();
        let mut out = vec![self.expr(names)?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.expr(names)?);
        }
        self.expect_sym(']')?;
        Ok(out)
    }
}

fn constant(n: usize, c: Rational) -> Raw {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![(Exponents::zero(n), c)]
    }
}

fn negate(a: &Raw) -> Raw {
    a.iter().map(|(e, c)| (e.clone(), -c)).collect()
}

fn add(a: &Raw, b: &Raw) -> Raw {
    let mut out = a.clone();
    for (e, c) in b {
        match out.iter_mut().find(|(f, _)| f == e) {
            Some((_, v)) => *v += c,
            None => out.push((e.clone(), c.clone())),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn mul(a: &Raw, b: &Raw) -> Raw {
    let mut out: Raw = Vec::new();
    for (e, c) in a {
        for (f, d) in b {
            out = add(&out, &vec![(e.mul(f), c * d)]);
        }
    }
    out
}

fn build(ring: &RingRef<Rational>, parts: &[Raw], at: (usize, usize)) -> PResult<Polynomial<Rational>> {
    if parts.len() != ring.rank() {
        return Err(ParseError {
            line: at.0,
            column: at.1,
            message: format!("rank mismatch: expected {} entries, found {}", ring.rank(), parts.len()),
        });
    }
    let terms = parts
        .iter()
        .enumerate()
        .flat_map(|(k, raw)| raw.iter().map(move |(e, c)| Term::new(k, e.clone(), c.clone())))
        .collect();
    Polynomial::new(ring.clone(), terms).map_err(|e| ParseError {
        line: at.0,
        column: at.1,
        message: e.to_string(),
    })
}

struct RawList {
    /// Each generator as a list of components, with where it started.
    items: Vec<(Vec<Raw>, (usize, usize))>,
    module: bool,
}

struct RawComponent {
    gens: RawList,
    center: Option<(Vec<Rational>, (usize, usize))>,
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> PResult<ProblemSpec> {
    let mut p = Parser::new(text)?;
    let mut ring_names: Option<(Vec<String>, usize)> = None;
    let mut order: Option<TermOrder> = None;
    let mut precedence = Precedence::TermOverPosition;
    let mut gens: Option<RawList> = None;
    let mut center: Option<(Vec<Rational>, (usize, usize))> = None;
    let mut components: Vec<RawComponent> = Vec::new();
    let mut space: Option<Vec<String>> = None;

    while !p.at(&Tok::End) {
        let at = p.here();
        let keyword = p.ident()?;
        let names = || ring_names.as_ref().map(|(n, _)| n.clone());
        match keyword.as_str() {
            "ring" => {
                if ring_names.is_some() {
                    return Err(err_at(at, "duplicate ring clause"));
                }
                let x = p.names()?;
                let mut all = x.clone();
                if p.at_sym('|') {
                    p.bump();
                    all.extend(p.names()?);
                }
                ring_names = Some((all, x.len()));
            }
            "order" => order = Some(p.order()?),
            "module_order" => {
                precedence = match p.ident()?.as_str() {
                    "top" => Precedence::TermOverPosition,
                    "pot" => Precedence::PositionOverTerm,
                    other => return Err(err_at(at, format!("unknown module ordering `{other}`"))),
                }
            }
            "ideal" | "module" => {
                let Some(n) = names() else {
                    return Err(err_at(at, "the ring clause must come first"));
                };
                if gens.is_some() || !components.is_empty() {
                    return Err(err_at(at, "generators given twice"));
                }
                gens = Some(generators(&mut p, &n, keyword == "module")?);
            }
            "center" => {
                center = Some((point(&mut p)?, at));
            }
            "space" => space = Some(p.names()?),
            "components" => {
                let Some(n) = names() else {
                    return Err(err_at(at, "the ring clause must come first"));
                };
                if gens.is_some() || !components.is_empty() {
                    return Err(err_at(at, "generators given twice"));
                }
                while p.at_sym('{') {
                    p.bump();
                    let mut comp_gens = None;
                    let mut comp_center = None;
                    while !p.at_sym('}') {
                        let inner_at = p.here();
                        let kw = p.ident()?;
                        match kw.as_str() {
                            "ideal" | "module" => comp_gens = Some(generators(&mut p, &n, kw == "module")?),
                            "center" => comp_center = Some((point(&mut p)?, inner_at)),
                            other => return Err(err_at(inner_at, format!("unexpected `{other}` in a component"))),
                        }
                        p.expect_sym(';')?;
                    }
                    p.bump();
                    let Some(g) = comp_gens else {
                        return Err(err_at(p.here(), "component without generators"));
                    };
                    components.push(RawComponent {
                        gens: g,
                        center: comp_center,
                    });
                }
                if components.is_empty() {
                    return p.error("expected `{`");
                }
            }
            other => return Err(err_at(at, format!("unknown clause `{other}`"))),
        }
        p.expect_sym(';')?;
    }

    let end = p.here();
    let Some((names, x_count)) = ring_names else {
        return Err(err_at(end, "missing ring clause"));
    };
    let lists: Vec<&RawList> = gens.iter().chain(components.iter().map(|c| &c.gens)).collect();
    if lists.is_empty() {
        return Err(err_at(end, "missing ideal, module or components clause"));
    }
    let mut rank = None;
    for list in &lists {
        for (parts, at) in &list.items {
            let r = if list.module { parts.len() } else { 1 };
            match rank {
                None => rank = Some(r),
                Some(k) if k != r => {
                    return Err(err_at(*at, format!("rank mismatch: expected {k} entries, found {r}")));
                }
                _ => {}
            }
        }
    }
    let rank = rank.unwrap_or(1);
    let desc = RingDescriptor::new(names, x_count, rank).map_err(|e| err_at(end, e.to_string()))?;
    let order = match order.unwrap_or(TermOrder::DegLex) {
        TermOrder::Product { x, t, .. } => TermOrder::Product { x, t, split: x_count },
        o => o,
    };
    let ring = PolyRing::new(desc, ModuleOrder::new(order, precedence), ()).map_err(|e| err_at(end, e.to_string()))?;
    let n = ring.nvars();
    let check_point = |c: Option<(Vec<Rational>, (usize, usize))>| -> PResult<Option<Vec<Rational>>> {
        match c {
            Some((v, at)) if v.len() != n => Err(err_at(
                at,
                format!("center has {} coordinates, ring has {n} variables", v.len()),
            )),
            Some((v, _)) => Ok(Some(v)),
            None => Ok(None),
        }
    };
    let convert = |list: &RawList| -> PResult<Vec<Polynomial<Rational>>> {
        list.items.iter().map(|(parts, at)| build(&ring, parts, *at)).collect()
    };
    let generators = match &gens {
        Some(list) => convert(list)?,
        None => Vec::new(),
    };
    let mut comps = Vec::new();
    for c in components {
        let gens = convert(&c.gens)?;
        let center = check_point(c.center)?.unwrap_or_else(|| vec![Rational::zero(); n]);
        comps.push(Component {
            generators: gens,
            center,
        });
    }
    let center = check_point(center)?;
    Ok(ProblemSpec {
        ring,
        generators,
        center,
        components: comps,
        space,
    })
}

fn err_at(at: (usize, usize), message: impl Into<String>) -> ParseError {
    ParseError {
        line: at.0,
        column: at.1,
        message: message.into(),
    }
}

fn point(p: &mut Parser) -> PResult<Vec<Rational>> {
    let mut out = vec![p.rational()?];
    while p.at_sym(',') {
        p.bump();
        out.push(p.rational()?);
    }
    Ok(out)
}

fn generators(p: &mut Parser, names: &[String], module: bool) -> PResult<RawList> {
    let mut items = Vec::new();
    loop {
        let at = p.here();
        let parts = if module { p.vector(names)? } else { vec![p.expr(names)?] };
        items.push((parts, at));
        if !p.at_sym(',') {
            break;
        }
        p.bump();
    }
    Ok(RawList { items, module })
}
