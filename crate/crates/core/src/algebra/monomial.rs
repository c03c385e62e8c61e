use std::fmt;

/// Exponent vector of a power product; one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    /// The exponent vector of the single variable `var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponents(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    pub fn lcm(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Returns the variable index if this is `v^e` with `e >= 1` for exactly one `v`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn with(&self, var: usize, value: u32) -> Exponents {
        let mut e = self.0.clone();
        e[var] = value;
        Exponents(e)
    }

    pub fn slice(&self, start: usize, end: usize) -> Exponents {
        Exponents(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Exponents) -> Exponents {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Exponents(e)
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for Exponents {
    fn from(v: Vec<u32>) -> Self {
        Exponents(v)
    }
}

/// A module term without coefficient: a power product tagged with a
/// 0-based position `pos` in `R^s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub pos: usize,
    pub exp: Exponents,
}

impl Monomial {
    pub fn new(pos: usize, exp: Exponents) -> Self {
        Monomial { pos, exp }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.pos == other.pos && self.exp.divides(&other.exp)
    }

    pub fn degree(&self) -> u32 {
        self.exp.degree()
    }

    /// Multiplies by the power product `e` (position unchanged).
    pub fn times(&self, e: &Exponents) -> Monomial {
        Monomial {
            pos: self.pos,
            exp: self.exp.mul(e),
        }
    }
}

/// Every exponent vector in `nvars` variables with total degree `< bound`,
/// grouped by ascending degree.
pub fn exponents_below(nvars: usize, bound: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..bound {
        exponents_of_degree(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    }
    out
}

fn exponents_of_degree(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
    if prefix.len() + 1 == nvars {
        prefix.push(left);
        out.push(Exponents(prefix.clone()));
        prefix.pop();
        return;
    }
    if nvars == 0 {
        if left == 0 {
            out.push(Exponents(Vec::new()));
        }
        return;
    }
    for e in (0..=left).rev() {
        prefix.push(e);
        exponents_of_degree(nvars, left - e, prefix, out);
        prefix.pop();
    }
}
