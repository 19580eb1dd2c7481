//! The orbit category of a finite group: conjugacy classes of subgroups as
//! objects, `G`-maps between coset spaces as arrows.
//!
//! An arrow `H0 → H1` is represented by an element `g` of the transporter
//! `{g | g H0 g⁻¹ ⊆ H1}`. It acts on coset spaces by `x H0 ↦ x g⁻¹ H1`, so
//! two representatives give the same map exactly when they share a right
//! coset `H1 g`. The canonical representative is the smallest element index
//! in that coset. For finite groups every hom-space is already discrete, so
//! the discretised category coincides with the orbit category.

use std::collections::HashMap;

use thiserror::Error;

use crate::category::{CategoryBuilder, CategoryError, FiniteCategory, ObjectInfo};
use crate::perm_group::{left_cosets, transporter, FiniteGroup, Subgroup, SubgroupLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("morphisms are not composable: target {first_target} ≠ source {second_source}")]
    NotComposable { first_target: usize, second_source: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub source: usize,
    pub target: usize,
    /// Canonical transporter element (smallest index in its `H1`-coset).
    pub rep: usize,
}

impl OrbitMorphism {
    /// The induced map `G/H0 → G/H1` on left cosets, as indices into
    /// [`left_cosets`] of each subgroup in the whole group.
    pub fn coset_map(&self, group: &FiniteGroup, h0: &Subgroup, h1: &Subgroup) -> Vec<usize> {
        let whole = group.full_subgroup();
        let src = left_cosets(group, &whole, h0);
        let dst = left_cosets(group, &whole, h1);
        let owner: HashMap<usize, usize> = dst
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
            .collect();
        let g_inv = group.inv(self.rep);
        src.iter().map(|c| owner[&group.mul(c[0], g_inv)]).collect()
    }
}

/// Smallest element of the right coset `H g`.
pub fn canonical_rep(group: &FiniteGroup, h: &Subgroup, g: usize) -> usize {
    h.members().iter().map(|&x| group.mul(x, g)).min().expect("subgroups are nonempty")
}

/// All arrows between two subgroup classes, sorted by representative.
pub fn hom_set(group: &FiniteGroup, lattice: &SubgroupLattice, source: usize, target: usize) -> Vec<OrbitMorphism> {
    let h0 = &lattice.classes[source].representative;
    let h1 = &lattice.classes[target].representative;
    let mut reps: Vec<usize> = transporter(group, h0, h1)
        .into_iter()
        .map(|g| canonical_rep(group, h1, g))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps.into_iter().map(|rep| OrbitMorphism { source, target, rep }).collect()
}

/// `second ∘ first`, represented by the product of representatives.
pub fn compose(
    group: &FiniteGroup,
    lattice: &SubgroupLattice,
    second: OrbitMorphism,
    first: OrbitMorphism,
) -> Result<OrbitMorphism, OrbitError> {
    if first.target != second.source {
        return Err(OrbitError::NotComposable {
            first_target: first.target,
            second_source: second.source,
        });
    }
    let h2 = &lattice.classes[second.target].representative;
    Ok(OrbitMorphism {
        source: first.source,
        target: second.target,
        rep: canonical_rep(group, h2, group.mul(second.rep, first.rep)),
    })
}

/// The orbit category together with the group data it was built from.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    pub group: FiniteGroup,
    pub lattice: SubgroupLattice,
    /// Arrow index → morphism data; identities come first.
    pub morphisms: Vec<OrbitMorphism>,
    pub category: FiniteCategory,
    lookup: HashMap<OrbitMorphism, usize>,
}

impl OrbitCategory {
    pub fn build(group: &FiniteGroup) -> Result<Self, OrbitError> {
        let lattice = SubgroupLattice::new(group);
        Self::from_lattice(group, lattice)
    }

    pub fn from_lattice(group: &FiniteGroup, lattice: SubgroupLattice) -> Result<Self, OrbitError> {
        let k = lattice.classes.len();
        let objects = lattice
            .classes
            .iter()
            .map(|c| ObjectInfo {
                label: c.label(),
                subgroup_class: Some(c.class_index),
                component: None,
            })
            .collect();
        let identity_label = group.element(group.identity()).cycle_notation();
        let mut builder = CategoryBuilder::new(objects, vec![identity_label; k]);

        let mut morphisms: Vec<OrbitMorphism> = (0..k)
            .map(|i| OrbitMorphism { source: i, target: i, rep: group.identity() })
            .collect();
        for i in 0..k {
            for j in 0..k {
                for m in hom_set(group, &lattice, i, j) {
                    if i == j && m.rep == group.identity() {
                        continue;
                    }
                    builder.add_arrow(i, j, group.element(m.rep).cycle_notation());
                    morphisms.push(m);
                }
            }
        }
        let lookup: HashMap<OrbitMorphism, usize> =
            morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        for (r, &first) in morphisms.iter().enumerate().skip(k) {
            for (l, &second) in morphisms.iter().enumerate().skip(k) {
                if second.source != first.target {
                    continue;
                }
                let c = compose(group, &lattice, second, first)?;
                builder.set_composite(l, r, lookup[&c]);
            }
        }
        let category = builder.finish()?;
        Ok(OrbitCategory { group: group.clone(), lattice, morphisms, category, lookup })
    }

    pub fn arrow_of(&self, m: &OrbitMorphism) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn class_count(&self) -> usize {
        self.lattice.classes.len()
    }
}
