//! Jacobian-quotient dimensions by truncated linear algebra.
//!
//! For each truncation degree `D`, the ideal `J + m^{D+1}` modulo `m^{D+1}`
//! is spanned by the products `x^a · ∂f/∂x_i` with terms above degree `D`
//! discarded. The quotient of the polynomials of degree `≤ D` by that span
//! has dimension `dim ℚ[x]/(J + m^{D+1})`, which is nondecreasing in `D` and
//! equals the local Milnor number as soon as `m^{D+1} ⊆ J` locally. When it
//! keeps growing, the singularity is not isolated. Stability over three
//! consecutive degrees is taken as convergence, so a finite answer is a
//! heuristic certificate rather than a proof.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::poly::{total_degree, Monomial, Poly, MAX_VARIABLES};
use crate::matrix::{int, Rational};

/// Largest truncation degree tried before giving up.
pub const TRUNCATION_CAP: u32 = 40;
pub const TRUNCATION_STEP: u32 = 2;
/// Number of consecutive equal dimensions accepted as stable.
pub const STABLE_RUN: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    pub mu: usize,
    /// Standard monomials spanning the quotient.
    pub basis: Vec<Monomial>,
    /// Weight-degree of each basis monomial, when weights were supplied.
    pub basis_weights: Option<Vec<Rational>>,
    pub truncation_degree: u32,
}

/// The truncated dimensions did not stabilise below the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonIsolated {
    /// `(degree, dimension)` for every truncation tried.
    pub history: Vec<(u32, usize)>,
}

/// Monomials in `vars` variables of total degree at most `max_degree`.
pub fn monomials_up_to(vars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![[0; MAX_VARIABLES]];
    for v in 0..vars {
        let mut next = Vec::new();
        for m in &out {
            let used = total_degree(m);
            for e in 0..=(max_degree - used) {
                let mut n = *m;
                n[v] = e;
                next.push(n);
            }
        }
        out = next;
    }
    out
}

fn weight_of(m: &Monomial, weights: &[Rational]) -> Rational {
    m.iter().zip(weights).fold(Rational::zero(), |acc, (&e, w)| acc + w * int(e as i64))
}

struct Truncation {
    dim: usize,
    basis: Vec<Monomial>,
}

/// Column order: by weight-degree (or total degree without weights), then
/// exponents. The standard monomials of a graded subspace under such an
/// order carry the same grading as the quotient.
fn truncated_quotient(f: &Poly, vars: usize, degree: u32, weights: Option<&[Rational]>) -> Truncation {
    let mut columns = monomials_up_to(vars, degree);
    match weights {
        Some(w) => {
            let keyed: Vec<(Rational, Monomial)> = columns.iter().map(|m| (weight_of(m, w), *m)).collect();
            let mut keyed = keyed;
            keyed.sort();
            columns = keyed.into_iter().map(|(_, m)| m).collect();
        }
        None => columns.sort_by(|a, b| total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))),
    }
    let position: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let partials: Vec<Poly> = (0..vars).map(|v| f.derivative(v)).filter(|p| !p.is_zero()).collect();
    let mut pivots: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for p in &partials {
        for shift in &columns {
            let terms = p.shifted_truncated(shift, degree);
            if terms.is_empty() {
                continue;
            }
            let row: BTreeMap<usize, Rational> = terms.into_iter().map(|(m, c)| (position[&m], c)).collect();
            reduce_and_insert(row, &mut pivots);
        }
    }
    let basis: Vec<Monomial> =
        (0..columns.len()).filter(|c| !pivots.contains_key(c)).map(|c| columns[c]).collect();
    Truncation { dim: basis.len(), basis }
}

/// Reduces `row` against the pivots (keyed by leading, i.e. largest,
/// column) and stores the remainder as a new pivot if nonzero.
fn reduce_and_insert(mut row: BTreeMap<usize, Rational>, pivots: &mut HashMap<usize, Vec<(usize, Rational)>>) {
    while let Some((&lead, coeff)) = row.iter().next_back() {
        let coeff = coeff.clone();
        match pivots.get(&lead) {
            Some(pivot) => {
                for (col, val) in pivot {
                    let entry = row.entry(*col).or_insert_with(Rational::zero);
                    *entry -= &coeff * val;
                    if entry.is_zero() {
                        row.remove(col);
                    }
                }
            }
            None => {
                let inv = coeff.recip();
                let normalized: Vec<(usize, Rational)> = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                debug_assert!(normalized.last().is_some_and(|(_, v)| v.is_one()));
                pivots.insert(lead, normalized);
                return;
            }
        }
    }
}

/// Local algebra `ℚ[[x]]/J_f` by the truncation schedule: start at twice
/// the degree of `f`, step by two, accept three equal dimensions in a row.
pub fn local_algebra(f: &Poly, vars: usize, weights: Option<&[Rational]>) -> Result<LocalAlgebra, NonIsolated> {
    let start = (2 * f.max_degree()).max(2);
    let mut history: Vec<(u32, usize)> = Vec::new();
    let mut degree = start;
    while degree <= TRUNCATION_CAP {
        let t = truncated_quotient(f, vars, degree, weights);
        history.push((degree, t.dim));
        let n = history.len();
        if n >= STABLE_RUN && history[n - STABLE_RUN..].iter().all(|&(_, d)| d == t.dim) {
            let basis_weights = weights.map(|w| t.basis.iter().map(|m| weight_of(m, w)).collect());
            return Ok(LocalAlgebra { mu: t.dim, basis: t.basis, basis_weights, truncation_degree: degree });
        }
        degree += TRUNCATION_STEP;
    }
    Err(NonIsolated { history })
}
