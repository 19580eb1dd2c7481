//! Isolated hypersurface singularities in up to three variables: local
//! algebras, Milnor numbers, quasihomogeneous weights and Euler gradings,
//! modality, stabilization, and the bundled simple-singularity corpus.
//!
//! Codimension is never computed; it is an input (the corpus stores it).

pub mod corpus;
pub mod milnor;
pub mod parse;
pub mod poly;

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{int, Rational};
pub use corpus::{AdjacencyCorpus, CorpusEntry, RelativeCokernel};
pub use milnor::{LocalAlgebra, NonIsolated};
pub use parse::ParseError;
pub use poly::{Monomial, Poly, MAX_VARIABLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("germ uses {used} variables but at most {max} are supported")]
    TooManyVariables { used: usize, max: usize },
    #[error("cannot stabilize: already {0} variables")]
    CannotStabilize(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weight {index} = {value} is outside the allowed range {range}")]
    WeightOutOfRange { index: usize, value: String, range: &'static str },
    #[error("malformed weight '{0}'")]
    BadWeight(String),
    #[error("monomial {monomial} has weight-degree {degree}, not 1")]
    NotQuasihomogeneous { monomial: String, degree: String },
    #[error("singularity is not isolated (truncated dimensions {})", format_history(.0))]
    NonIsolated(Vec<(u32, usize)>),
    #[error("negative modality: mu = {mu}, codim = {codim}")]
    NegativeModality { mu: usize, codim: usize },
    #[error("unknown corpus entry '{0}'")]
    UnknownEntry(String),
    #[error("no adjacency from {from} to {to} in the corpus")]
    NoAdjacency { from: String, to: String },
    #[error("invalid corpus: {0}")]
    Corpus(String),
}

fn format_history(h: &[(u32, usize)]) -> String {
    h.iter().map(|(d, n)| format!("D={d}:{n}")).collect::<Vec<_>>().join(", ")
}

/// Polynomial germ vanishing at the origin, in `variable_count` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyGerm {
    poly: Poly,
    variable_count: usize,
}

impl fmt::Debug for PolyGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyGerm({}; n={})", self.poly, self.variable_count)
    }
}

impl fmt::Display for PolyGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl PolyGerm {
    /// The variable count is the number of leading variables actually used
    /// (at least one).
    pub fn parse(text: &str) -> Result<Self, SingularityError> {
        let poly = parse::parse_germ(text)?;
        let n = poly.variables_used().max(1);
        Ok(PolyGerm { poly, variable_count: n })
    }

    pub fn new(poly: Poly, variable_count: usize) -> Result<Self, SingularityError> {
        let used = poly.variables_used();
        if variable_count > MAX_VARIABLES || used > variable_count {
            return Err(SingularityError::TooManyVariables { used: used.max(variable_count), max: MAX_VARIABLES });
        }
        let c = poly.constant_term();
        if !c.is_zero() {
            return Err(ParseError::NonzeroConstant { value: c.to_string() }.into());
        }
        Ok(PolyGerm { poly, variable_count })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// `f ↦ f + x_{n+1}²`.
    pub fn stabilize(&self) -> Result<PolyGerm, SingularityError> {
        let n = self.variable_count;
        if n >= MAX_VARIABLES {
            return Err(SingularityError::CannotStabilize(n));
        }
        let mut square = [0; MAX_VARIABLES];
        square[n] = 2;
        Ok(PolyGerm { poly: self.poly.add(&Poly::term(square, Rational::one())), variable_count: n + 1 })
    }
}

/// Parses a comma-separated list of rationals such as `1/3,1/4`.
pub fn parse_weights(text: &str) -> Result<Vec<Rational>, SingularityError> {
    text.split(',').map(|w| parse_rational(w.trim()).ok_or_else(|| SingularityError::BadWeight(w.trim().into()))).collect()
}

pub(crate) fn parse_rational(text: &str) -> Option<Rational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn weight_degree(m: &Monomial, weights: &[Rational]) -> Rational {
    m.iter().zip(weights).fold(Rational::zero(), |acc, (&e, w)| acc + w * int(e as i64))
}

/// A germ together with positive weights under which every monomial has
/// weight-degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasihomogeneousGerm {
    germ: PolyGerm,
    weights: Vec<Rational>,
}

impl QuasihomogeneousGerm {
    pub fn new(germ: PolyGerm, weights: Vec<Rational>) -> Result<Self, SingularityError> {
        if weights.len() != germ.variable_count {
            return Err(SingularityError::WeightCount { expected: germ.variable_count, got: weights.len() });
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(SingularityError::WeightOutOfRange { index: i, value: w.to_string(), range: "(0, ∞)" });
            }
        }
        for (m, _) in germ.poly.terms() {
            let d = weight_degree(m, &weights);
            if !d.is_one() {
                return Err(SingularityError::NotQuasihomogeneous {
                    monomial: poly::format_monomial(m),
                    degree: d.to_string(),
                });
            }
        }
        Ok(QuasihomogeneousGerm { germ, weights })
    }

    pub fn germ(&self) -> &PolyGerm {
        &self.germ
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn euler_operator(&self) -> EulerOperator {
        EulerOperator { weights: self.weights.clone() }
    }

    /// Stabilization carries weight 1/2 on the new variable.
    pub fn stabilize(&self) -> Result<QuasihomogeneousGerm, SingularityError> {
        let mut weights = self.weights.clone();
        weights.push(Rational::new(1.into(), 2.into()));
        QuasihomogeneousGerm::new(self.germ.stabilize()?, weights)
    }
}

/// `D = Σ w_i x_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerOperator {
    weights: Vec<Rational>,
}

impl EulerOperator {
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        Poly::from_terms(p.terms().map(|(m, c)| (*m, c * self.eigenvalue(m))))
    }

    /// Eigenvalue on the monomial `x^a`.
    pub fn eigenvalue(&self, m: &Monomial) -> Rational {
        weight_degree(m, &self.weights)
    }
}

/// Local algebra by truncated linear algebra; `NonIsolated` when the
/// truncated dimensions do not stabilise.
pub fn local_algebra(germ: &PolyGerm) -> Result<LocalAlgebra, SingularityError> {
    milnor::local_algebra(&germ.poly, germ.variable_count, None).map_err(|e| SingularityError::NonIsolated(e.history))
}

pub fn milnor_number(germ: &PolyGerm) -> Result<usize, SingularityError> {
    Ok(local_algebra(germ)?.mu)
}

/// `∏(1/w_i − 1)`.
pub fn weight_milnor(weights: &[Rational]) -> Result<Rational, SingularityError> {
    let mut acc = Rational::one();
    for (i, w) in weights.iter().enumerate() {
        if !w.is_positive() || *w >= Rational::one() {
            return Err(SingularityError::WeightOutOfRange { index: i, value: w.to_string(), range: "(0, 1)" });
        }
        acc *= w.recip() - Rational::one();
    }
    Ok(acc)
}

/// Euler eigenvalues on a graded monomial basis of the local algebra, sorted.
pub fn spectrum_grading(q: &QuasihomogeneousGerm) -> Result<Vec<Rational>, SingularityError> {
    let algebra = milnor::local_algebra(&q.germ.poly, q.germ.variable_count, Some(&q.weights))
        .map_err(|e| SingularityError::NonIsolated(e.history))?;
    let mut spectrum = algebra.basis_weights.expect("weights were supplied");
    spectrum.sort();
    Ok(spectrum)
}

/// `(μ − 1) − codim`; negative values signal inconsistent inputs.
pub fn modality(mu: usize, codim: usize) -> Result<usize, SingularityError> {
    mu.checked_sub(1)
        .and_then(|m| m.checked_sub(codim))
        .ok_or(SingularityError::NegativeModality { mu, codim })
}
