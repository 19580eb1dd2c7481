//! JSON input formats for groups, complexes, stratified complexes and
//! linear representations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gspace::{ComplexError, GComplex};
use crate::linear_rep::{LinearAction, RepError};
use crate::matrix::{Matrix, Rational};
use crate::perm_group::{FiniteGroup, GroupError, Permutation};
use crate::phase_diagram::{StrataError, StratifiedComplex};
use crate::singularity::parse_rational;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("generator {generator}: entry ({row}, {col}) '{text}' is not a rational")]
    BadEntry { generator: usize, row: usize, col: usize, text: String },
    #[error("generator {generator} is not a {dim}x{dim} matrix")]
    BadShape { generator: usize, dim: usize },
}

/// A generator given either as an image array or in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<usize>),
    Cycles(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
}

impl GroupSpec {
    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupSpec {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| GeneratorSpec::Images(g.images().to_vec())).collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let mut images = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            match g {
                GeneratorSpec::Images(v) => images.push(v.clone()),
                GeneratorSpec::Cycles(text) => {
                    images.push(Permutation::from_cycles(self.degree, text)?.images().to_vec())
                }
            }
        }
        FiniteGroup::from_images(self.degree, &images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub vertices: usize,
    #[serde(default)]
    pub simplices: Vec<Vec<usize>>,
    /// Vertex images per group generator; absent means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
}

impl ComplexSpec {
    pub fn build(&self, group: &FiniteGroup) -> Result<GComplex, ComplexError> {
        let action = match &self.action {
            Some(a) => a.clone(),
            None => vec![(0..self.vertices).collect(); group.generators().len()],
        };
        GComplex::new(group, self.vertices, self.simplices.clone(), action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataSpec {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub poset: Vec<[usize; 2]>,
    pub assignment: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<Vec<i64>>,
}

impl StrataSpec {
    pub fn build(&self) -> Result<StratifiedComplex, StrataError> {
        let relations: Vec<(usize, usize)> = self.poset.iter().map(|&[i, j]| (i, j)).collect();
        StratifiedComplex::new(
            self.vertices,
            self.simplices.clone(),
            &relations,
            self.assignment.clone(),
            self.codim.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSpec {
    pub dim: usize,
    /// Row-major matrices with `"p/q"` entries.
    pub generators: Vec<Vec<Vec<String>>>,
}

impl RepSpec {
    pub fn from_matrices(dim: usize, generators: &[Matrix]) -> Self {
        RepSpec {
            dim,
            generators: generators
                .iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
        }
    }

    pub fn matrices(&self) -> Result<Vec<Matrix>, InputError> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (g, rows) in self.generators.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(InputError::BadShape { generator: g, dim: self.dim });
            }
            let mut parsed: Vec<Vec<Rational>> = Vec::with_capacity(self.dim);
            for (i, row) in rows.iter().enumerate() {
                let mut r = Vec::with_capacity(self.dim);
                for (j, text) in row.iter().enumerate() {
                    let x = parse_rational(text.trim()).ok_or_else(|| InputError::BadEntry {
                        generator: g,
                        row: i,
                        col: j,
                        text: text.clone(),
                    })?;
                    r.push(x);
                }
                parsed.push(r);
            }
            out.push(if self.dim == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(parsed) });
        }
        Ok(out)
    }

    pub fn build(&self, group: &FiniteGroup) -> Result<LinearAction, InputError> {
        Ok(LinearAction::new(group, self.dim, self.matrices()?)?)
    }
}

pub fn read_group(text: &str) -> Result<FiniteGroup, InputError> {
    let spec: GroupSpec = serde_json::from_str(text)?;
    Ok(spec.build()?)
}

pub fn read_complex(text: &str, group: &FiniteGroup) -> Result<GComplex, InputError> {
    let spec: ComplexSpec = serde_json::from_str(text)?;
    Ok(spec.build(group)?)
}

pub fn read_strata(text: &str) -> Result<StratifiedComplex, InputError> {
    let spec: StrataSpec = serde_json::from_str(text)?;
    Ok(spec.build()?)
}

pub fn read_rep(text: &str, group: &FiniteGroup) -> Result<LinearAction, InputError> {
    let spec: RepSpec = serde_json::from_str(text)?;
    spec.build(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_formats() {
        let g = read_group(r#"{"degree": 3, "generators": [[1, 0, 2], "(0 1 2)"]}"#).unwrap();
        assert_eq!(g.order(), 6);
        let err = read_group(r#"{"degree": 3, "generators": [[0, 1, 2], [0, 0, 1]]}"#).unwrap_err();
        assert!(matches!(err, InputError::Group(GroupError::MalformedGenerator { index: 1, .. })));
        assert!(matches!(read_group("{"), Err(InputError::Json(_))));
    }

    #[test]
    fn complex_default_action() {
        let g = read_group(r#"{"degree": 2, "generators": [[1, 0]]}"#).unwrap();
        let x = read_complex(r#"{"vertices": 1}"#, &g).unwrap();
        assert_eq!(x.vertex_count(), 1);
    }

    #[test]
    fn rep_entries() {
        let g = read_group(r#"{"degree": 2, "generators": [[1, 0]]}"#).unwrap();
        let r = read_rep(r#"{"dim": 2, "generators": [[["0", "1"], ["1", "0"]]]}"#, &g).unwrap();
        assert_eq!(r.dim(), 2);
        let bad = read_rep(r#"{"dim": 1, "generators": [[["1/0"]]]}"#, &g).unwrap_err();
        assert!(matches!(bad, InputError::BadEntry { generator: 0, row: 0, col: 0, .. }));
        let shape = read_rep(r#"{"dim": 2, "generators": [[["1"]]]}"#, &g).unwrap_err();
        assert!(matches!(shape, InputError::BadShape { .. }));
    }
}
