//! Cumulant generating functions of finite discrete observables, their
//! Legendre transforms, and Cramér functions.

use thiserror::Error;

/// Tolerance on the total probability.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;
/// Tolerance in θ for the Legendre root-finder.
pub const THETA_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RateError {
    #[error("observable has no outcomes")]
    Empty,
    #[error("outcome {index} has non-finite value or probability")]
    NonFinite { index: usize },
    #[error("outcome {index} has non-positive probability {probability}")]
    NonPositive { index: usize, probability: f64 },
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("observable needs at least two distinct values")]
    Degenerate,
    #[error("x = {x} lies outside the open hull ({min}, {max}); the rate is infinite or a boundary limit")]
    OutsideHull { x: f64, min: f64, max: f64 },
    #[error("Bernoulli parameter {0} must lie in (0, 1)")]
    BadParameter(f64),
    #[error("malformed distribution: {0}")]
    Syntax(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteObservable {
    outcomes: Vec<(f64, f64)>,
    min: f64,
    max: f64,
}

impl DiscreteObservable {
    /// `(value, probability)` pairs. Repeated values are allowed.
    pub fn new(outcomes: Vec<(f64, f64)>) -> Result<Self, RateError> {
        if outcomes.is_empty() {
            return Err(RateError::Empty);
        }
        let mut total = 0.0;
        for (i, &(v, p)) in outcomes.iter().enumerate() {
            if !v.is_finite() || !p.is_finite() {
                return Err(RateError::NonFinite { index: i });
            }
            if p <= 0.0 {
                return Err(RateError::NonPositive { index: i, probability: p });
            }
            total += p;
        }
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(RateError::NotNormalized(total));
        }
        let min = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
        let max = outcomes.iter().map(|o| o.0).fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            return Err(RateError::Degenerate);
        }
        Ok(DiscreteObservable { outcomes, min, max })
    }

    /// Value 1 with probability `p`, value 0 otherwise.
    pub fn bernoulli(p: f64) -> Result<Self, RateError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(RateError::BadParameter(p));
        }
        Self::new(vec![(0.0, 1.0 - p), (1.0, p)])
    }

    /// Parses `value:prob,value:prob,...`.
    pub fn parse(text: &str) -> Result<Self, RateError> {
        let mut outcomes = Vec::new();
        for part in text.split(',') {
            let (v, p) = part
                .split_once(':')
                .ok_or_else(|| RateError::Syntax(format!("expected value:probability, got '{}'", part.trim())))?;
            let v: f64 = v.trim().parse().map_err(|_| RateError::Syntax(format!("bad value '{}'", v.trim())))?;
            let p: f64 = p.trim().parse().map_err(|_| RateError::Syntax(format!("bad probability '{}'", p.trim())))?;
            outcomes.push((v, p));
        }
        Self::new(outcomes)
    }

    pub fn outcomes(&self) -> &[(f64, f64)] {
        &self.outcomes
    }

    pub fn min_value(&self) -> f64 {
        self.min
    }

    pub fn max_value(&self) -> f64 {
        self.max
    }

    pub fn mean(&self) -> f64 {
        self.outcomes.iter().map(|&(v, p)| v * p).sum()
    }

    /// `Γ(θ) = log Σ p_i exp(θ l_i)`, shifted by the largest exponent.
    pub fn cgf(&self, theta: f64) -> f64 {
        let shift = self.outcomes.iter().map(|&(v, _)| theta * v).fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = self.outcomes.iter().map(|&(v, p)| p * (theta * v - shift).exp()).sum();
        shift + sum.ln()
    }

    /// `Γ′(θ)` and `Γ″(θ)`: mean and variance under the tilted measure.
    pub fn cgf_derivatives(&self, theta: f64) -> (f64, f64) {
        let shift = self.outcomes.iter().map(|&(v, _)| theta * v).fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = self.outcomes.iter().map(|&(v, p)| p * (theta * v - shift).exp()).collect();
        let z: f64 = weights.iter().sum();
        let m1: f64 = self.outcomes.iter().zip(&weights).map(|(&(v, _), w)| v * w).sum::<f64>() / z;
        let var: f64 = self.outcomes.iter().zip(&weights).map(|(&(v, _), w)| (v - m1).powi(2) * w).sum::<f64>() / z;
        (m1, var)
    }

    fn check_hull(&self, x: f64) -> Result<(), RateError> {
        if !(x > self.min && x < self.max) {
            return Err(RateError::OutsideHull { x, min: self.min, max: self.max });
        }
        Ok(())
    }

    /// The maximiser θ of `θx − Γ(θ)`, i.e. the root of `Γ′(θ) = x`.
    pub fn conjugate_point(&self, x: f64) -> Result<f64, RateError> {
        self.check_hull(x)?;
        let slope = |t: f64| self.cgf_derivatives(t).0 - x;
        let (mut lo, mut hi) = (-1.0, 1.0);
        while slope(lo) > 0.0 {
            hi = lo;
            lo *= 2.0;
        }
        while slope(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        while hi - lo > THETA_TOLERANCE * (1.0 + lo.abs().max(hi.abs())) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut theta = 0.5 * (lo + hi);
        for _ in 0..4 {
            let (d1, d2) = self.cgf_derivatives(theta);
            if d2 <= 0.0 {
                break;
            }
            let step = (d1 - x) / d2;
            let next = theta - step;
            if !(next >= lo - THETA_TOLERANCE && next <= hi + THETA_TOLERANCE) {
                break;
            }
            theta = next;
        }
        Ok(theta)
    }

    /// `Γ*(x) = sup_θ (θx − Γ(θ))` on the open hull of the outcomes.
    pub fn legendre(&self, x: f64) -> Result<f64, RateError> {
        let theta = self.conjugate_point(x)?;
        Ok((theta * x - self.cgf(theta)).max(0.0))
    }

    /// `C(x) = −Γ*(x)`.
    pub fn cramer(&self, x: f64) -> Result<f64, RateError> {
        Ok(-self.legendre(x)?)
    }
}

/// A row of the rate table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatePoint {
    pub x: f64,
    pub conjugate: f64,
    pub cramer: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateProfile {
    observable: DiscreteObservable,
}

impl RateProfile {
    pub fn new(observable: DiscreteObservable) -> Self {
        RateProfile { observable }
    }

    pub fn observable(&self) -> &DiscreteObservable {
        &self.observable
    }

    pub fn mean(&self) -> f64 {
        self.observable.mean()
    }

    pub fn cgf(&self, theta: f64) -> f64 {
        self.observable.cgf(theta)
    }

    pub fn legendre(&self, x: f64) -> Result<f64, RateError> {
        self.observable.legendre(x)
    }

    pub fn cramer(&self, x: f64) -> Result<f64, RateError> {
        self.observable.cramer(x)
    }

    pub fn table(&self, xs: &[f64]) -> Result<Vec<RatePoint>, RateError> {
        xs.iter()
            .map(|&x| {
                let conjugate = self.legendre(x)?;
                Ok(RatePoint { x, conjugate, cramer: -conjugate })
            })
            .collect()
    }
}

/// `S(x) = −x ln x − (1−x) ln(1−x)`, with `S(0) = S(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64, RateError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(RateError::OutsideHull { x, min: 0.0, max: 1.0 });
    }
    let term = |t: f64| if t == 0.0 { 0.0 } else { -t * t.ln() };
    Ok(term(x) + term(1.0 - x))
}

/// Relative entropy of Bernoulli(x) to Bernoulli(p).
pub fn bernoulli_relative_entropy(x: f64, p: f64) -> f64 {
    let term = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).ln() };
    term(x, p) + term(1.0 - x, 1.0 - p)
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, RateError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, s] = parts.as_slice() else {
        return Err(RateError::Syntax(format!("grid must be start:stop:step, got '{text}'")));
    };
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| RateError::Syntax(format!("bad grid number '{t}'")));
    let (start, stop, step) = (parse(a)?, parse(b)?, parse(s)?);
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(RateError::Syntax(format!("empty or invalid grid '{text}'")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cgf_examples() {
        let b = DiscreteObservable::bernoulli(0.3).unwrap();
        assert_eq!(b.cgf(0.0), 0.0);
        assert!((b.cgf(1.0) - (0.7 + 0.3 * 1f64.exp()).ln()).abs() < 1e-14);
        let two = DiscreteObservable::new(vec![(0.0, 0.5), (2.0, 0.5)]).unwrap();
        assert!((two.cgf(1.0) - ((1.0 + 2f64.exp()) / 2.0).ln()).abs() < 1e-14);
        assert!(b.cgf(800.0).is_finite());
        assert!(b.cgf(-800.0).is_finite());
    }

    #[test]
    fn legendre_examples() {
        let b = DiscreteObservable::bernoulli(0.3).unwrap();
        assert!(b.legendre(0.3).unwrap().abs() <= 1e-12);
        let expected = 0.5 * (0.5f64 / 0.3).ln() + 0.5 * (0.5f64 / 0.7).ln();
        assert!((b.legendre(0.5).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.087177).abs() < 1e-6);
        let near = b.legendre(1.0 - 1e-9).unwrap();
        assert!((near + 0.3f64.ln()).abs() < 1e-6);
        assert_eq!(b.cramer(0.5).unwrap(), -b.legendre(0.5).unwrap());
    }

    #[test]
    fn hull_errors() {
        let b = DiscreteObservable::bernoulli(0.3).unwrap();
        assert!(matches!(b.legendre(1.0), Err(RateError::OutsideHull { .. })));
        assert!(matches!(b.legendre(-0.1), Err(RateError::OutsideHull { .. })));
    }

    #[test]
    fn validation() {
        assert_eq!(DiscreteObservable::new(vec![]), Err(RateError::Empty));
        assert!(matches!(DiscreteObservable::new(vec![(0.0, 0.5), (1.0, 0.6)]), Err(RateError::NotNormalized(_))));
        assert!(matches!(DiscreteObservable::new(vec![(0.0, 0.0), (1.0, 1.0)]), Err(RateError::NonPositive { .. })));
        assert_eq!(DiscreteObservable::new(vec![(1.0, 0.5), (1.0, 0.5)]), Err(RateError::Degenerate));
        assert!(matches!(DiscreteObservable::bernoulli(1.0), Err(RateError::BadParameter(_))));
        assert!(DiscreteObservable::parse("0:0.7,1:0.3").is_ok());
        assert!(matches!(DiscreteObservable::parse("0-0.7"), Err(RateError::Syntax(_))));
    }

    #[test]
    fn entropy() {
        assert!((binary_entropy(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
    }

    #[test]
    fn grid() {
        let g = parse_grid("0.1:0.9:0.1").unwrap();
        assert_eq!(g.len(), 9);
        assert!((g[8] - 0.9).abs() < 1e-12);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1").is_err());
    }
}
