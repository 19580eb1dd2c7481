use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::matrix::{int, Rational};

pub const MAX_VARIABLES: usize = 3;
pub const VARIABLE_NAMES: [char; MAX_VARIABLES] = ['x', 'y', 'z'];

/// Exponent vector over `x, y, z`.
pub type Monomial = [u32; MAX_VARIABLES];

pub fn total_degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Sparse polynomial in up to three variables with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term([0; MAX_VARIABLES], c)
    }

    pub fn variable(index: usize) -> Self {
        let mut m = [0; MAX_VARIABLES];
        m[index] = 1;
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(total_degree).max().unwrap_or(0)
    }

    /// One more than the highest variable index that occurs.
    pub fn variables_used(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[0; MAX_VARIABLES])
    }

    /// The constant polynomial's value, if it is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; MAX_VARIABLES]).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * k)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut d = *m;
            d[var] -= 1;
            (d, c * int(m[var] as i64))
        }))
    }

    /// `x^shift · self`, dropping terms of total degree above `max_degree`.
    pub fn shifted_truncated(&self, shift: &Monomial, max_degree: u32) -> Vec<(Monomial, Rational)> {
        self.terms
            .iter()
            .map(|(m, c)| (mono_mul(m, shift), c.clone()))
            .filter(|(m, _)| total_degree(m) <= max_degree)
            .collect()
    }
}

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = *a;
    for (o, e) in out.iter_mut().zip(b) {
        *o += e;
    }
    out
}

pub fn format_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { VARIABLE_NAMES[i].to_string() } else { format!("{}^{e}", VARIABLE_NAMES[i]) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    /// Terms in descending total degree, then descending lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| total_degree(b.0).cmp(&total_degree(a.0)).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let is_const = m.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
