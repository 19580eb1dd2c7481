//! Phase diagrams: the category of elements of `π₀ ∘ Fix`, the comparison
//! functors around it, and the analogous category for stratified complexes.
//!
//! Direction convention: an arrow `(H0, c0) → (H1, c1)` lies over an orbit
//! arrow `α: H0 → H1` with `Fix(α)(c1) = c0`. Arrows therefore run from
//! smaller to larger isotropy, the direction of a symmetry-gaining
//! degeneration.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::category::{CategoryBuilder, CategoryError, FiniteCategory, Functor, ObjectInfo};
use crate::gspace::{components, GComplex, Pi0FixPresheaf};
use crate::orbit_category::{canonical_rep, compose, OrbitCategory, OrbitMorphism};
use crate::perm_group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseObject {
    pub class_index: usize,
    pub component: usize,
    pub label: String,
}

/// `Φ₀[X/G]` together with its projection to the orbit category.
#[derive(Clone, Debug)]
pub struct PhaseCategory {
    pub objects: Vec<PhaseObject>,
    pub category: FiniteCategory,
    /// Orbit-category arrow underlying each arrow.
    pub over: Vec<usize>,
    pub aut_orders: Vec<usize>,
    pub presheaf: Pi0FixPresheaf,
    object_lookup: HashMap<(usize, usize), usize>,
    arrow_lookup: HashMap<(usize, usize), usize>,
}

impl PhaseCategory {
    pub fn build(orbit: &OrbitCategory, x: &GComplex) -> Result<Self, CategoryError> {
        let presheaf = Pi0FixPresheaf::build(orbit, x);
        let mut objects = Vec::new();
        let mut object_lookup = HashMap::new();
        for class in &orbit.lattice.classes {
            for k in 0..presheaf.component_count(class.class_index) {
                object_lookup.insert((class.class_index, k), objects.len());
                objects.push(PhaseObject {
                    class_index: class.class_index,
                    component: k,
                    label: format!("({}, c{k})", class.label()),
                });
            }
        }
        let infos = objects
            .iter()
            .map(|o| ObjectInfo {
                label: o.label.clone(),
                subgroup_class: Some(o.class_index),
                component: Some(o.component),
            })
            .collect();
        let id_label = orbit.category.arrows()[0].label.clone();
        let mut builder = CategoryBuilder::new(infos, vec![id_label; objects.len()]);

        // identities: arrow index = object index, lying over the identity of its class
        let n = objects.len();
        let mut over: Vec<usize> = objects.iter().map(|o| o.class_index).collect();
        let mut arrow_data: Vec<(usize, usize, usize)> = (0..n).map(|o| (o, o, over[o])).collect();
        let mut arrow_lookup: HashMap<(usize, usize), usize> = HashMap::new();
        for (obj, o) in objects.iter().enumerate() {
            arrow_lookup.insert((o.class_index, obj), obj);
        }
        let class_count = orbit.class_count();
        for (a, m) in orbit.morphisms.iter().enumerate().skip(class_count) {
            for (c1, &c0) in presheaf.induced[a].iter().enumerate() {
                let src = object_lookup[&(m.source, c0)];
                let dst = object_lookup[&(m.target, c1)];
                let idx = builder.add_arrow(src, dst, orbit.category.arrows()[a].label.clone());
                over.push(a);
                arrow_data.push((src, dst, a));
                arrow_lookup.insert((a, dst), idx);
            }
        }

        for (r, &(_, r_dst, r_over)) in arrow_data.iter().enumerate().skip(n) {
            for (l, &(l_src, l_dst, l_over)) in arrow_data.iter().enumerate().skip(n) {
                if l_src != r_dst {
                    continue;
                }
                let composite = compose(
                    &orbit.group,
                    &orbit.lattice,
                    orbit.morphisms[l_over],
                    orbit.morphisms[r_over],
                )
                .expect("composable over composable");
                let a = orbit.arrow_of(&composite).expect("orbit composite exists");
                builder.set_composite(l, r, arrow_lookup[&(a, l_dst)]);
            }
        }
        let category = builder.finish()?;
        let aut_orders = (0..n).map(|o| category.aut_order(o)).collect();
        Ok(PhaseCategory { objects, category, over, aut_orders, presheaf, object_lookup, arrow_lookup })
    }

    pub fn object_of(&self, class_index: usize, component: usize) -> Option<usize> {
        self.object_lookup.get(&(class_index, component)).copied()
    }

    /// The arrow over orbit arrow `orbit_arrow` ending at object `target`.
    pub fn lift(&self, orbit_arrow: usize, target: usize) -> Option<usize> {
        self.arrow_lookup.get(&(orbit_arrow, target)).copied()
    }

    /// Projection to the orbit category: forget the component.
    pub fn forgetful(&self) -> Functor {
        Functor {
            object_map: self.objects.iter().map(|o| o.class_index).collect(),
            arrow_map: self.over.clone(),
        }
    }

    /// Objects lying over a given subgroup class.
    pub fn fiber(&self, class_index: usize) -> Vec<usize> {
        (0..self.objects.len()).filter(|&o| self.objects[o].class_index == class_index).collect()
    }

    /// Stabiliser of each object's component under the Weyl group action,
    /// counted directly from the presheaf.
    pub fn stabilizer_orders(&self) -> Vec<usize> {
        self.objects
            .iter()
            .map(|o| {
                self.presheaf.weyl_action[o.class_index]
                    .iter()
                    .filter(|(_, perm)| perm[o.component] == o.component)
                    .count()
            })
            .collect()
    }
}

/// The action groupoid `[X/G]`: vertices as objects, an arrow `v → g·v` for
/// every element `g`. Arrow `v` is the identity at `v`; arrow
/// `n + v·(|G|−1) + (g−1)` is `g` at `v` for `g ≠ e`.
pub fn transformation_groupoid(group: &FiniteGroup, x: &GComplex) -> Result<FiniteCategory, CategoryError> {
    let nv = x.vertex_count();
    let order = group.order();
    let objects = (0..nv).map(|v| ObjectInfo::labeled(format!("v{v}"))).collect();
    let mut builder = CategoryBuilder::new(objects, vec![group.element(0).cycle_notation(); nv]);
    for v in 0..nv {
        for g in 1..order {
            builder.add_arrow(v, x.act(g, v), group.element(g).cycle_notation());
        }
    }
    let index = |g: usize, v: usize| if g == 0 { v } else { nv + v * (order - 1) + (g - 1) };
    for v in 0..nv {
        for g1 in 1..order {
            let w = x.act(g1, v);
            for g2 in 1..order {
                builder.set_composite(index(g2, w), index(g1, v), index(group.mul(g2, g1), v));
            }
        }
    }
    builder.finish()
}

/// `[X/G] → Φ₀[X/G]`: a vertex goes to the class of its isotropy group and
/// the component containing it, transported to the class representative by
/// the smallest conjugating element.
pub fn quotient_functor(orbit: &OrbitCategory, x: &GComplex, phase: &PhaseCategory) -> Functor {
    let group = &orbit.group;
    let nv = x.vertex_count();
    let order = group.order();
    let mut class_of = Vec::with_capacity(nv);
    let mut transport = Vec::with_capacity(nv);
    let mut object_map = Vec::with_capacity(nv);
    for v in 0..nv {
        let iso = x.isotropy(v).expect("vertex in range");
        let class = orbit.lattice.class_index_of(&iso).expect("isotropy is a subgroup");
        let rep = &orbit.lattice.classes[class].representative;
        let k = (0..order)
            .find(|&g| group.conjugate_subgroup(g, rep) == iso)
            .expect("isotropy is conjugate to its class representative");
        let w = x.act(group.inv(k), v);
        let comp = phase.presheaf.fixes[class].component_of(w).expect("k⁻¹v is fixed by the representative");
        class_of.push(class);
        transport.push(k);
        object_map.push(phase.object_of(class, comp).expect("object exists"));
    }

    let mut arrow_map: Vec<usize> = object_map.clone();
    for v0 in 0..nv {
        for g in 1..order {
            let v1 = x.act(g, v0);
            let class = class_of[v0];
            let rep = &orbit.lattice.classes[class].representative;
            let t = group.mul(group.mul(group.inv(transport[v1]), g), transport[v0]);
            let m = OrbitMorphism { source: class, target: class, rep: canonical_rep(group, rep, t) };
            let a = orbit.arrow_of(&m).expect("t normalises the representative");
            arrow_map.push(phase.lift(a, object_map[v1]).expect("lift exists"));
        }
    }
    Functor { object_map, arrow_map }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("simplex {simplex:?} mentions a vertex outside 0..{vertex_count}")]
    VertexOutOfRange { simplex: Vec<usize>, vertex_count: usize },
    #[error("simplex {0:?} is empty, repeated, or repeats a vertex")]
    BadSimplex(Vec<usize>),
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },
    #[error("assignment has {found} entries for {expected} simplices")]
    AssignmentLength { expected: usize, found: usize },
    #[error("poset relations contain a cycle through stratum {0}")]
    NotAPoset(usize),
    #[error("codimension array has {found} entries for {expected} strata")]
    CodimLength { expected: usize, found: usize },
    #[error(
        "closure condition violated: face {face:?} (stratum {face_stratum}) of simplex {simplex:?} \
         (stratum {simplex_stratum}) is not in a lower stratum"
    )]
    ClosureViolation {
        simplex: Vec<usize>,
        face: Vec<usize>,
        simplex_stratum: usize,
        face_stratum: usize,
    },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A simplicial complex partitioned into strata indexed by a finite poset.
#[derive(Clone, Debug)]
pub struct StratifiedComplex {
    simplices: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    /// `leq[i][j]` iff `i ≤ j` (reflexive, transitive).
    leq: Vec<Vec<bool>>,
    codim: Option<Vec<i64>>,
    warnings: Vec<String>,
}

impl StratifiedComplex {
    /// `relations` lists pairs `[i, j]` with `i ≤ j`; the order is their
    /// reflexive-transitive closure. Every simplex, vertices included, must
    /// be listed and assigned.
    pub fn new(
        vertex_count: usize,
        simplices: Vec<Vec<usize>>,
        relations: &[(usize, usize)],
        assignment: Vec<usize>,
        codim: Option<Vec<i64>>,
    ) -> Result<Self, StrataError> {
        if assignment.len() != simplices.len() {
            return Err(StrataError::AssignmentLength { expected: simplices.len(), found: assignment.len() });
        }
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut normalized = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != s.len() || index.contains_key(&sorted) {
                return Err(StrataError::BadSimplex(s));
            }
            if sorted.iter().any(|&v| v >= vertex_count) {
                return Err(StrataError::VertexOutOfRange { simplex: s, vertex_count });
            }
            index.insert(sorted.clone(), normalized.len());
            normalized.push(sorted);
        }
        for v in 0..vertex_count {
            if !index.contains_key(&vec![v]) {
                return Err(StrataError::MissingFace { simplex: vec![v], face: vec![v] });
            }
        }

        let strata = relations
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(assignment.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        let mut leq = vec![vec![false; strata]; strata];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            leq[a][b] = true;
        }
        for k in 0..strata {
            let above_k = leq[k].clone();
            for row in leq.iter_mut().filter(|row| row[k]) {
                for (cell, &up) in row.iter_mut().zip(&above_k) {
                    *cell |= up;
                }
            }
        }
        for (i, j) in (0..strata).flat_map(|i| (0..i).map(move |j| (i, j))) {
            if leq[i][j] && leq[j][i] {
                return Err(StrataError::NotAPoset(j));
            }
        }

        for (si, s) in normalized.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let Some(&fi) = index.get(&face) else {
                    return Err(StrataError::MissingFace { simplex: s.clone(), face });
                };
                if !leq[assignment[fi]][assignment[si]] {
                    return Err(StrataError::ClosureViolation {
                        simplex: s.clone(),
                        face,
                        simplex_stratum: assignment[si],
                        face_stratum: assignment[fi],
                    });
                }
            }
        }

        let mut warnings = Vec::new();
        if let Some(c) = &codim {
            if c.len() != strata {
                return Err(StrataError::CodimLength { expected: strata, found: c.len() });
            }
            for i in 0..strata {
                for j in 0..strata {
                    if i != j && leq[i][j] && c[i] <= c[j] {
                        let w = format!("codimension not strictly decreasing from stratum {i} to stratum {j}");
                        log::warn!("{w}");
                        warnings.push(w);
                    }
                }
            }
        }
        Ok(StratifiedComplex { simplices: normalized, assignment, leq, codim, warnings })
    }

    pub fn stratum_count(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn codim(&self) -> Option<&[i64]> {
        self.codim.as_deref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Simplices of the closed stratum `⋃_{j ≤ i} X_j`.
    pub fn closure(&self, i: usize) -> Vec<&[usize]> {
        self.simplices
            .iter()
            .zip(&self.assignment)
            .filter(|(_, &a)| self.leq[a][i])
            .map(|(s, _)| s.as_slice())
            .collect()
    }

    /// Category of elements of `i ↦ π₀(closure of X_i)`, covariant along
    /// the inclusions of closures.
    pub fn strata_category(&self) -> Result<FiniteCategory, StrataError> {
        let n = self.stratum_count();
        let comps: Vec<Vec<Vec<usize>>> = (0..n).map(|i| components(self.closure(i))).collect();
        let mut objects = Vec::new();
        let mut lookup = HashMap::new();
        for (i, cs) in comps.iter().enumerate() {
            for k in 0..cs.len() {
                lookup.insert((i, k), objects.len());
                objects.push(ObjectInfo {
                    label: format!("(S{i}, c{k})"),
                    subgroup_class: None,
                    component: Some(k),
                });
            }
        }
        let ids = objects.iter().map(|o: &ObjectInfo| format!("{}<={}", o.label, o.label)).collect();
        let object_total = objects.len();
        let mut builder = CategoryBuilder::new(objects, ids);
        let image = |i: usize, k: usize, j: usize| -> usize {
            let v = comps[i][k][0];
            comps[j].iter().position(|c| c.binary_search(&v).is_ok()).expect("closures are nested")
        };
        // arrow (i, k) → (j, image) for i < j
        let mut arrow_at: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for i in 0..n {
            for k in 0..comps[i].len() {
                arrow_at.insert((i, k, i), lookup[&(i, k)]);
                for j in (0..n).filter(|&j| j != i && self.leq[i][j]) {
                    let idx = builder.add_arrow(lookup[&(i, k)], lookup[&(j, image(i, k, j))], format!("S{i}<=S{j}"));
                    arrow_at.insert((i, k, j), idx);
                }
            }
        }
        for i in 0..n {
            for k in 0..comps[i].len() {
                for j in (0..n).filter(|&j| j != i && self.leq[i][j]) {
                    let kj = image(i, k, j);
                    for l in (0..n).filter(|&l| l != j && self.leq[j][l]) {
                        builder.set_composite(arrow_at[&(j, kj, l)], arrow_at[&(i, k, j)], arrow_at[&(i, k, l)]);
                    }
                }
            }
        }
        debug_assert!(object_total <= arrow_at.len());
        Ok(builder.finish()?)
    }

    /// Strata that are minimal in the poset.
    pub fn minimal_strata(&self) -> BTreeSet<usize> {
        (0..self.stratum_count())
            .filter(|&i| (0..self.stratum_count()).all(|j| j == i || !self.leq[j][i]))
            .collect()
    }
}
