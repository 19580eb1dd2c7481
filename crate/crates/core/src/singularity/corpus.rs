//! Bundled simple (ADE) singularities with their degeneration arrows.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{
    milnor_number, modality, parse_rational, spectrum_grading, weight_milnor, PolyGerm, QuasihomogeneousGerm,
    SingularityError,
};
use crate::matrix::Rational;

const BUNDLED: &str = include_str!("../../data/ade_corpus.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub normal_form: String,
    pub weights: Vec<String>,
    pub mu: usize,
    pub codim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusArrow {
    pub from: String,
    pub to: String,
}

#[derive(Deserialize)]
struct RawCorpus {
    entries: Vec<CorpusEntry>,
    arrows: Vec<CorpusArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCokernel {
    pub dimension: usize,
    /// Top Euler weight of the more degenerate germ, reported for unit jumps.
    pub top_weight: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct AdjacencyCorpus {
    entries: Vec<CorpusEntry>,
    germs: Vec<QuasihomogeneousGerm>,
    arrows: Vec<CorpusArrow>,
    index: BTreeMap<String, usize>,
}

/// The bundled corpus file as shipped.
pub fn bundled_json() -> &'static str {
    BUNDLED
}

impl AdjacencyCorpus {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled corpus is valid")
    }

    /// Parses and checks the stored data: unique names, quasihomogeneous
    /// normal forms, stored μ equal to the weight formula, codim = μ − 1,
    /// and a μ-drop of exactly one along every arrow.
    pub fn from_json(text: &str) -> Result<Self, SingularityError> {
        let raw: RawCorpus = serde_json::from_str(text).map_err(|e| SingularityError::Corpus(e.to_string()))?;
        let mut index = BTreeMap::new();
        let mut germs = Vec::new();
        for (i, e) in raw.entries.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(SingularityError::Corpus(format!("duplicate entry {}", e.name)));
            }
            let weights = e
                .weights
                .iter()
                .map(|w| parse_rational(w).ok_or_else(|| SingularityError::BadWeight(w.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            let germ = PolyGerm::parse(&e.normal_form)?;
            let q = QuasihomogeneousGerm::new(germ, weights)?;
            let formula = weight_milnor(q.weights())?;
            if formula != Rational::from_integer(e.mu.into()) {
                return Err(SingularityError::Corpus(format!("{}: weight formula gives {formula}, stored mu {}", e.name, e.mu)));
            }
            if modality(e.mu, e.codim)? != 0 {
                return Err(SingularityError::Corpus(format!("{}: codim {} is not mu - 1", e.name, e.codim)));
            }
            germs.push(q);
        }
        for a in &raw.arrows {
            let (Some(&f), Some(&t)) = (index.get(&a.from), index.get(&a.to)) else {
                return Err(SingularityError::Corpus(format!("arrow {} -> {} names an unknown entry", a.from, a.to)));
            };
            if raw.entries[f].mu != raw.entries[t].mu + 1 {
                return Err(SingularityError::Corpus(format!("arrow {} -> {} does not drop mu by one", a.from, a.to)));
            }
        }
        Ok(AdjacencyCorpus { entries: raw.entries, germs, arrows: raw.arrows, index })
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn arrows(&self) -> &[CorpusArrow] {
        &self.arrows
    }

    pub fn entry(&self, name: &str) -> Result<&CorpusEntry, SingularityError> {
        self.index.get(name).map(|&i| &self.entries[i]).ok_or_else(|| SingularityError::UnknownEntry(name.into()))
    }

    pub fn germ(&self, name: &str) -> Result<&QuasihomogeneousGerm, SingularityError> {
        self.index.get(name).map(|&i| &self.germs[i]).ok_or_else(|| SingularityError::UnknownEntry(name.into()))
    }

    /// Recomputes every Milnor number by linear algebra and compares with
    /// the stored value; returns the names that disagree.
    pub fn verify_computed(&self) -> Result<Vec<String>, SingularityError> {
        let mut bad = Vec::new();
        for (e, q) in self.entries.iter().zip(&self.germs) {
            if milnor_number(q.germ())? != e.mu {
                bad.push(e.name.clone());
            }
        }
        Ok(bad)
    }

    /// Whether `to` is reachable from `from` along corpus arrows.
    pub fn degenerates_to(&self, from: &str, to: &str) -> Result<bool, SingularityError> {
        let start = *self.index.get(from).ok_or_else(|| SingularityError::UnknownEntry(from.into()))?;
        let goal = *self.index.get(to).ok_or_else(|| SingularityError::UnknownEntry(to.into()))?;
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                return Ok(true);
            }
            for a in self.arrows.iter().filter(|a| self.index[&a.from] == v) {
                let w = self.index[&a.to];
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(false)
    }

    /// Cokernel data for a degeneration `from → to`: the drop in μ and, when
    /// that drop is one, the top Euler weight of `from`.
    pub fn relative_cokernel(&self, from: &str, to: &str) -> Result<RelativeCokernel, SingularityError> {
        if !self.degenerates_to(from, to)? {
            return Err(SingularityError::NoAdjacency { from: from.into(), to: to.into() });
        }
        let dimension = self.entry(from)?.mu - self.entry(to)?.mu;
        let top_weight = if dimension == 1 {
            spectrum_grading(self.germ(from)?)?.pop()
        } else {
            None
        };
        Ok(RelativeCokernel { dimension, top_weight })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    #[test]
    fn bundled_shape() {
        let c = AdjacencyCorpus::bundled();
        assert_eq!(c.entries().len(), 16);
        assert_eq!(c.arrows().len(), 24);
        assert_eq!(c.entry("E7").unwrap().mu, 7);
    }

    #[test]
    fn cokernels() {
        let c = AdjacencyCorpus::bundled();
        let a = c.relative_cokernel("A2", "A1").unwrap();
        assert_eq!(a, RelativeCokernel { dimension: 1, top_weight: Some(rat(1, 3)) });
        assert_eq!(c.relative_cokernel("E6", "D5").unwrap().dimension, 1);
        assert_eq!(c.relative_cokernel("E6", "D5").unwrap().top_weight, Some(rat(5, 6)));
        assert_eq!(c.relative_cokernel("D4", "D4").unwrap(), RelativeCokernel { dimension: 0, top_weight: None });
        assert_eq!(c.relative_cokernel("E8", "A1").unwrap().dimension, 7);
        assert!(matches!(c.relative_cokernel("A1", "A2"), Err(SingularityError::NoAdjacency { .. })));
        assert!(matches!(c.relative_cokernel("A5", "D4"), Err(SingularityError::NoAdjacency { .. })));
        assert!(matches!(c.relative_cokernel("X9", "A1"), Err(SingularityError::UnknownEntry(_))));
    }

    #[test]
    fn rejects_bad_corpus() {
        let bad_mu = r#"{"entries":[{"name":"A2","normal_form":"x^3","weights":["1/3"],"mu":3,"codim":2}],"arrows":[]}"#;
        assert!(matches!(AdjacencyCorpus::from_json(bad_mu), Err(SingularityError::Corpus(_))));
        let bad_arrow = r#"{"entries":[
            {"name":"A1","normal_form":"x^2","weights":["1/2"],"mu":1,"codim":0},
            {"name":"A3","normal_form":"x^4","weights":["1/4"],"mu":3,"codim":2}],
            "arrows":[{"from":"A3","to":"A1"}]}"#;
        assert!(matches!(AdjacencyCorpus::from_json(bad_arrow), Err(SingularityError::Corpus(_))));
    }
}
