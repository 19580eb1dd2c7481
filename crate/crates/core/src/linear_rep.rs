//! Finite groups acting linearly on `ℚ^d`: fixed subspaces by averaging,
//! relative normal spaces along symmetry-breaking arrows, and the degeneracy
//! quiver over the subgroup classes.
//!
//! Orbits of a finite group are discrete, so the slice normal to an orbit is
//! the whole space. What varies between strata is the fixed subspace; the
//! quiver records, along each covering relation `H0 < H1` of the
//! subconjugacy order, the complement of `Fix(H1)` inside `Fix(H0)`.

use num_traits::One;
use thiserror::Error;

use crate::matrix::{int, Matrix, Rational};
use crate::perm_group::{
    extend_to_elements, is_subconjugate, normalizer, transporter, FiniteGroup, Subgroup, SubgroupLattice,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("expected {expected} generator matrices, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("generator {generator} is not a {dim}×{dim} matrix")]
    Shape { generator: usize, dim: usize },
    #[error("generator {generator} is not invertible")]
    Singular { generator: usize },
    #[error("matrices do not respect the group relations (generator {generator}, element {element})")]
    RelationViolated { generator: usize, element: usize },
    #[error("element {witness} does not conjugate the source subgroup into the target")]
    NotInTransporter { witness: usize },
}

/// A representation `ρ: G → GL_d(ℚ)`, cached on every element.
#[derive(Clone, Debug)]
pub struct LinearAction {
    dim: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
}

impl LinearAction {
    pub fn new(group: &FiniteGroup, dim: usize, generators: Vec<Matrix>) -> Result<Self, RepError> {
        let expected = group.generators().len();
        if generators.len() != expected {
            return Err(RepError::GeneratorCount { expected, found: generators.len() });
        }
        for (generator, m) in generators.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::Shape { generator, dim });
            }
            if !m.is_invertible() {
                return Err(RepError::Singular { generator });
            }
        }
        let elements = extend_to_elements(group, &generators, Matrix::identity(dim), |a, b| a * b)
            .map_err(|e| RepError::RelationViolated { generator: e.generator, element: e.element })?;
        Ok(LinearAction { dim, generators, elements })
    }

    /// The permutation representation of `group` on `ℚ^degree`:
    /// `g·e_i = e_{g(i)}`.
    pub fn permutation(group: &FiniteGroup) -> Self {
        let n = group.degree();
        let gens = group
            .generators()
            .iter()
            .map(|p| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    m[(p.apply(i), i)] = Rational::one();
                }
                m
            })
            .collect();
        Self::new(group, n, gens).expect("permutation matrices form a representation")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn matrix(&self, element: usize) -> &Matrix {
        &self.elements[element]
    }

    /// `P = (1/|H|) Σ_{h∈H} ρ(h)`, the projection onto `Fix(H)`.
    pub fn averaging_projector(&self, h: &Subgroup) -> Matrix {
        let sum = h
            .members()
            .iter()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, &g| &acc + &self.elements[g]);
        sum.scale(&int(h.order() as i64).recip())
    }

    /// Canonical (row-reduced) basis of `Fix(H)`.
    pub fn fix_subspace(&self, h: &Subgroup) -> Vec<Vec<Rational>> {
        self.averaging_projector(h).column_space()
    }

    /// Complement of `Fix(K)` in `Fix(H0)` for `K = g⁻¹ H1 g ⊇ H0`, where the
    /// witness `g` satisfies `g H0 g⁻¹ ⊆ H1`. The complement is
    /// `(I − P_K) Fix(H0)`, which is invariant under `N_K(H0)`; the returned
    /// matrices give the action of a generating set of `N_K(H0)` on it.
    pub fn relative_normal(
        &self,
        group: &FiniteGroup,
        h0: &Subgroup,
        h1: &Subgroup,
        witness: usize,
    ) -> Result<RelativeNormal, RepError> {
        if !h0.members().iter().all(|&h| h1.contains(group.conjugate(witness, h))) {
            return Err(RepError::NotInTransporter { witness });
        }
        let k = group.conjugate_subgroup(group.inv(witness), h1);
        let fix_source = self.fix_subspace(h0);
        let fix_target = self.fix_subspace(&k);
        let complement = &Matrix::identity(self.dim) - &self.averaging_projector(&k);
        let images: Vec<Vec<Rational>> = fix_source.iter().map(|b| complement.apply(b)).collect();
        let basis = Matrix::from_columns(self.dim, &images).column_space();

        let stabilizing: Vec<usize> = normalizer(group, h0)
            .members()
            .iter()
            .copied()
            .filter(|&n| k.contains(n))
            .collect();
        let acting = group.generating_set(&Subgroup::from_members(stabilizing));
        let normal = RelativeNormal {
            source_fix_dim: fix_source.len(),
            target_fix_dim: fix_target.len(),
            acting: Vec::new(),
            matrices: Vec::new(),
            basis,
        };
        let matrices = acting.iter().map(|&n| normal.restrict(self.matrix(n))).collect();
        Ok(RelativeNormal { acting, matrices, ..normal })
    }

    /// Degeneracy quiver over the subgroup classes of `group`.
    pub fn degeneracy_quiver(&self, group: &FiniteGroup, lattice: &SubgroupLattice) -> Result<QuiverOutput, RepError> {
        let classes = &lattice.classes;
        let nodes: Vec<QuiverNode> = classes
            .iter()
            .map(|c| {
                let basis = self.fix_subspace(&c.representative);
                QuiverNode {
                    class_index: c.class_index,
                    order: c.order(),
                    fix_dim: basis.len(),
                    moving_dim: self.dim - basis.len(),
                    fix_basis: basis,
                }
            })
            .collect();

        let n = classes.len();
        let below: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        i != j && is_subconjugate(group, &classes[i].representative, &classes[j].representative)
                    })
                    .collect()
            })
            .collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !below[i][j] || (0..n).any(|k| below[i][k] && below[k][j]) {
                    continue;
                }
                let (h0, h1) = (&classes[i].representative, &classes[j].representative);
                let witness = transporter(group, h0, h1)[0];
                let normal = self.relative_normal(group, h0, h1, witness)?;
                arrows.push(QuiverArrow { source: i, target: j, witness, normal });
            }
        }
        Ok(QuiverOutput { nodes, arrows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeNormal {
    pub source_fix_dim: usize,
    pub target_fix_dim: usize,
    /// Basis vectors of the normal complement, as vectors in `ℚ^d`.
    pub basis: Vec<Vec<Rational>>,
    /// Elements (indices) whose restricted action is recorded.
    pub acting: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

impl RelativeNormal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `m` on the complement basis; `m` must preserve the span.
    pub fn restrict(&self, m: &Matrix) -> Matrix {
        let k = self.basis.len();
        if k == 0 {
            return Matrix::zeros(0, 0);
        }
        let d = self.basis[0].len();
        let cols = Matrix::from_columns(d, &self.basis);
        let coords: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| cols.solve_in_columns(&m.apply(b)).expect("complement is invariant"))
            .collect();
        let mut out = Matrix::zeros(k, k);
        for (j, c) in coords.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                out[(i, j)] = x.clone();
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverNode {
    pub class_index: usize,
    pub order: usize,
    pub fix_dim: usize,
    /// Dimension of the non-trivial part `(I − P_H) ℚ^d`.
    pub moving_dim: usize,
    pub fix_basis: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    /// Smallest `g` with `g H_source g⁻¹ ⊆ H_target`.
    pub witness: usize,
    pub normal: RelativeNormal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverOutput {
    pub nodes: Vec<QuiverNode>,
    pub arrows: Vec<QuiverArrow>,
}

impl QuiverOutput {
    /// `dim Fix(H0) = dim Fix(H1) + dim normal` on every arrow.
    pub fn dimensions_add_up(&self) -> bool {
        self.arrows.iter().all(|a| {
            self.nodes[a.source].fix_dim == self.nodes[a.target].fix_dim + a.normal.dim()
                && a.normal.source_fix_dim == self.nodes[a.source].fix_dim
                && a.normal.target_fix_dim == self.nodes[a.target].fix_dim
        })
    }
}
