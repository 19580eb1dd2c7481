//! Finite G-spaces modelled as simplicial complexes with a simplicial group
//! action, fixed-point subcomplexes, and the presheaf `H ↦ π₀ Fix(H)`.
//!
//! "Fixed" means fixed vertex-wise. An element that only permutes the
//! vertices of a simplex among themselves does not fix it; such actions are
//! flagged at construction, and [`GComplex::barycentric_subdivision`]
//! produces a complex on which the two notions agree.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::orbit_category::OrbitCategory;
use crate::perm_group::{
    extend_to_elements, left_cosets, normalizer, FiniteGroup, Permutation, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {simplex:?} mentions a vertex outside 0..{vertex_count}")]
    VertexOutOfRange { simplex: Vec<usize>, vertex_count: usize },
    #[error("simplex {0:?} is empty or repeats a vertex")]
    DegenerateSimplex(Vec<usize>),
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },
    #[error("expected {expected} generator actions, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("action of generator {generator}: {reason}")]
    BadVertexMap { generator: usize, reason: String },
    #[error("generator {generator} sends simplex {simplex:?} to a non-simplex")]
    NotSimplicial { generator: usize, simplex: Vec<usize> },
    #[error("vertex action does not respect the group relations (generator {generator}, element {element})")]
    RelationViolated { generator: usize, element: usize },
    #[error("vertex {vertex} out of range")]
    NoSuchVertex { vertex: usize },
}

/// A finite simplicial complex with a group acting by simplicial
/// automorphisms. Simplices are sorted vertex lists in `(dimension, lex)`
/// order; every vertex is a 0-simplex.
#[derive(Clone, Debug)]
pub struct GComplex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
    simplex_index: HashMap<Vec<usize>, usize>,
    generator_maps: Vec<Permutation>,
    element_maps: Vec<Permutation>,
    warnings: Vec<String>,
}

impl GComplex {
    /// Validates the complex and the action. `action[k]` is the vertex image
    /// array of the group's `k`-th generator. Singletons are implied by
    /// `vertex_count`; every other face must be listed.
    pub fn new(
        group: &FiniteGroup,
        vertex_count: usize,
        simplices: Vec<Vec<usize>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        let mut set: BTreeSet<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        for s in simplices {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != s.len() {
                return Err(ComplexError::DegenerateSimplex(s));
            }
            if sorted.iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { simplex: s, vertex_count });
            }
            set.insert(sorted);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if !set.contains(&face) {
                    return Err(ComplexError::MissingFace { simplex: s.clone(), face });
                }
            }
        }
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let simplex_index: HashMap<Vec<usize>, usize> =
            simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let expected = group.generators().len();
        if action.len() != expected {
            return Err(ComplexError::GeneratorCount { expected, found: action.len() });
        }
        let mut generator_maps = Vec::with_capacity(expected);
        for (generator, images) in action.into_iter().enumerate() {
            if images.len() != vertex_count {
                return Err(ComplexError::BadVertexMap {
                    generator,
                    reason: format!("has {} images, expected {vertex_count}", images.len()),
                });
            }
            let p = Permutation::new(images)
                .map_err(|reason| ComplexError::BadVertexMap { generator, reason })?;
            for s in &simplices {
                if !simplex_index.contains_key(&image_of(&p, s)) {
                    return Err(ComplexError::NotSimplicial { generator, simplex: s.clone() });
                }
            }
            generator_maps.push(p);
        }
        let element_maps = extend_to_elements(group, &generator_maps, Permutation::identity(vertex_count), |a, b| {
            a.compose(b)
        })
        .map_err(|e| ComplexError::RelationViolated { generator: e.generator, element: e.element })?;

        let mut warnings = Vec::new();
        'outer: for s in &simplices {
            for (g, p) in element_maps.iter().enumerate() {
                let moved = s.iter().any(|&v| p.apply(v) != v);
                if moved && image_of(p, s) == *s {
                    warnings.push(format!(
                        "element {g} fixes simplex {s:?} setwise but not pointwise; \
                         consider barycentric subdivision"
                    ));
                    continue 'outer;
                }
            }
        }
        for w in &warnings {
            log::warn!("{w}");
        }

        Ok(GComplex { vertex_count, simplices, simplex_index, generator_maps, element_maps, warnings })
    }

    /// A single point with the trivial action.
    pub fn point(group: &FiniteGroup) -> Self {
        let action = vec![vec![0]; group.generators().len()];
        GComplex::new(group, 1, Vec::new(), action).expect("a point is a valid G-complex")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.simplex_index.get(s).copied()
    }

    pub fn generator_maps(&self) -> &[Permutation] {
        &self.generator_maps
    }

    /// Vertex permutation of group element `g`.
    pub fn element_map(&self, g: usize) -> &Permutation {
        &self.element_maps[g]
    }

    pub fn act(&self, g: usize, vertex: usize) -> usize {
        self.element_maps[g].apply(vertex)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Simplex indices fixed vertex-wise by every element of `h`.
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> Vec<usize> {
        let fixed_vertex: Vec<bool> = (0..self.vertex_count)
            .map(|v| h.members().iter().all(|&g| self.act(g, v) == v))
            .collect();
        (0..self.simplices.len())
            .filter(|&i| self.simplices[i].iter().all(|&v| fixed_vertex[v]))
            .collect()
    }

    pub fn isotropy(&self, vertex: usize) -> Result<Subgroup, ComplexError> {
        if vertex >= self.vertex_count {
            return Err(ComplexError::NoSuchVertex { vertex });
        }
        Ok(Subgroup::from_members(
            (0..self.element_maps.len()).filter(|&g| self.act(g, vertex) == vertex).collect(),
        ))
    }

    pub fn orbit_of(&self, vertex: usize) -> Result<Vec<usize>, ComplexError> {
        if vertex >= self.vertex_count {
            return Err(ComplexError::NoSuchVertex { vertex });
        }
        let orbit: BTreeSet<usize> = self.element_maps.iter().map(|p| p.apply(vertex)).collect();
        Ok(orbit.into_iter().collect())
    }

    /// Barycentric subdivision: vertices are the simplices of `self`,
    /// simplices are chains of faces. The action extends to barycentres.
    pub fn barycentric_subdivision(&self, group: &FiniteGroup) -> GComplex {
        let n = self.simplices.len();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        // Simplices are sorted by dimension, so extending a chain by a later
        // index that contains its top element keeps it increasing.
        let mut frontier: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for chain in &frontier {
                let top = &self.simplices[*chain.last().expect("nonempty chain")];
                for j in (chain.last().unwrap() + 1)..n {
                    let cand = &self.simplices[j];
                    if cand.len() > top.len() && top.iter().all(|v| cand.binary_search(v).is_ok()) {
                        let mut c = chain.clone();
                        c.push(j);
                        next.push(c);
                    }
                }
            }
            chains.extend(frontier.into_iter().filter(|c| c.len() > 1));
            frontier = next;
        }
        let action = self
            .generator_maps
            .iter()
            .map(|p| {
                self.simplices
                    .iter()
                    .map(|s| self.simplex_index[&image_of(p, s)])
                    .collect()
            })
            .collect();
        GComplex::new(group, n, chains, action).expect("subdivision of a valid G-complex is valid")
    }
}

fn image_of(p: &Permutation, simplex: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = simplex.iter().map(|&v| p.apply(v)).collect();
    img.sort_unstable();
    img
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so roots are component minima.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Connected components of a face-closed set of simplices, each as a sorted
/// vertex list; component ids are positions in the result, ordered by
/// smallest vertex.
pub fn components<'a, I>(simplices: I) -> Vec<Vec<usize>>
where
    I: IntoIterator<Item = &'a [usize]>,
{
    let simplices: Vec<&[usize]> = simplices.into_iter().collect();
    let Some(max) = simplices.iter().flat_map(|s| s.iter()).max().copied() else {
        return Vec::new();
    };
    let mut present = vec![false; max + 1];
    let mut uf = UnionFind::new(max + 1);
    for s in &simplices {
        for &v in s.iter() {
            present[v] = true;
        }
        for w in s.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in (0..=max).filter(|&v| present[v]) {
        by_root.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixResult {
    pub class_index: usize,
    pub simplices: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

impl FixResult {
    pub fn component_of(&self, vertex: usize) -> Option<usize> {
        self.components.iter().position(|c| c.binary_search(&vertex).is_ok())
    }
}

/// `H ↦ π₀ Fix(H)` on the orbit category, with induced maps and the Weyl
/// group action on components.
#[derive(Clone, Debug)]
pub struct Pi0FixPresheaf {
    /// Indexed by subgroup class; computed for the class representative.
    pub fixes: Vec<FixResult>,
    /// Indexed by orbit-category arrow `H0 → H1`: component of `Fix(H1)` ↦
    /// component of `Fix(H0)`, via `x ↦ g⁻¹x`.
    pub induced: Vec<Vec<usize>>,
    /// Per class: `(coset representative n, permutation of components c ↦ n·c)`
    /// for each element of `N(H)/H`.
    pub weyl_action: Vec<Vec<(usize, Vec<usize>)>>,
}

impl Pi0FixPresheaf {
    pub fn build(orbit: &OrbitCategory, x: &GComplex) -> Self {
        let group = &orbit.group;
        let fixes: Vec<FixResult> = orbit
            .lattice
            .classes
            .iter()
            .map(|class| fix_result(x, class.class_index, &class.representative))
            .collect();

        let induced = orbit
            .morphisms
            .iter()
            .map(|m| {
                let g_inv = group.inv(m.rep);
                fixes[m.target]
                    .components
                    .iter()
                    .map(|c| {
                        fixes[m.source]
                            .component_of(x.act(g_inv, c[0]))
                            .expect("g⁻¹ carries Fix(H1) into Fix(H0)")
                    })
                    .collect()
            })
            .collect();

        let weyl_action = orbit
            .lattice
            .classes
            .iter()
            .map(|class| {
                let h = &class.representative;
                let fix = &fixes[class.class_index];
                left_cosets(group, &normalizer(group, h), h)
                    .into_iter()
                    .map(|coset| {
                        let n = coset[0];
                        let perm = fix
                            .components
                            .iter()
                            .map(|c| fix.component_of(x.act(n, c[0])).expect("N(H) preserves Fix(H)"))
                            .collect();
                        (n, perm)
                    })
                    .collect()
            })
            .collect();

        Pi0FixPresheaf { fixes, induced, weyl_action }
    }

    pub fn component_count(&self, class: usize) -> usize {
        self.fixes[class].components.len()
    }
}

pub fn fix_result(x: &GComplex, class_index: usize, h: &Subgroup) -> FixResult {
    let simplices = x.fixed_subcomplex(h);
    let comps = components(simplices.iter().map(|&i| x.simplices()[i].as_slice()));
    FixResult { class_index, simplices, components: comps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::from_images(2, &[vec![1, 0]]).unwrap()
    }

    fn square(g: &FiniteGroup, action: Vec<usize>) -> GComplex {
        let edges = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        GComplex::new(g, 4, edges, vec![action]).unwrap()
    }

    #[test]
    fn reflection_fixes_two_vertices() {
        let g = c2();
        let x = square(&g, vec![0, 3, 2, 1]);
        let fixed = x.fixed_subcomplex(&g.full_subgroup());
        let fixed: Vec<&Vec<usize>> = fixed.iter().map(|&i| &x.simplices()[i]).collect();
        assert_eq!(fixed, vec![&vec![0], &vec![2]]);
        assert_eq!(x.fixed_subcomplex(&g.trivial_subgroup()).len(), 8);
    }

    #[test]
    fn half_turn_fixes_nothing() {
        let g = c2();
        let x = square(&g, vec![2, 3, 0, 1]);
        assert!(x.fixed_subcomplex(&g.full_subgroup()).is_empty());
        assert_eq!(x.orbit_of(1).unwrap(), vec![1, 3]);
        assert!(x.isotropy(1).unwrap().is_trivial());
    }

    #[test]
    fn components_examples() {
        let path: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![1, 2], vec![2, 3]];
        assert_eq!(components(path.iter().map(Vec::as_slice)).len(), 1);
        let two: Vec<Vec<usize>> = vec![vec![0], vec![2]];
        assert_eq!(components(two.iter().map(Vec::as_slice)), vec![vec![0], vec![2]]);
        let g = c2();
        let x = square(&g, vec![0, 3, 2, 1]);
        assert_eq!(components(x.simplices().iter().map(Vec::as_slice)).len(), 1);
    }

    #[test]
    fn isotropy_of_fixed_vertex() {
        let g = c2();
        let x = square(&g, vec![0, 3, 2, 1]);
        assert_eq!(x.isotropy(0).unwrap(), g.full_subgroup());
        assert_eq!(x.isotropy(9), Err(ComplexError::NoSuchVertex { vertex: 9 }));
        let t = FiniteGroup::trivial(1);
        let y = GComplex::new(&t, 3, vec![], vec![]).unwrap();
        assert!(y.isotropy(2).unwrap().is_trivial());
        assert_eq!(y.orbit_of(2).unwrap(), vec![2]);
    }

    #[test]
    fn validation_errors() {
        let g = c2();
        let err = GComplex::new(&g, 3, vec![vec![0, 1, 2]], vec![vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, ComplexError::MissingFace { .. }));
        let err = GComplex::new(&g, 3, vec![vec![0, 1]], vec![vec![0, 2, 1]]).unwrap_err();
        assert!(matches!(err, ComplexError::NotSimplicial { generator: 0, .. }));
        let err = GComplex::new(&g, 2, vec![], vec![vec![0, 0]]).unwrap_err();
        assert!(matches!(err, ComplexError::BadVertexMap { generator: 0, .. }));
        // A 3-cycle on vertices cannot realise an involution.
        let err = GComplex::new(&g, 3, vec![], vec![vec![1, 2, 0]]).unwrap_err();
        assert!(matches!(err, ComplexError::RelationViolated { .. }));
        let err = GComplex::new(&g, 2, vec![], vec![]).unwrap_err();
        assert!(matches!(err, ComplexError::GeneratorCount { expected: 1, found: 0 }));
    }

    #[test]
    fn edge_flip_warns_and_subdivision_fixes_barycentre() {
        let g = c2();
        let x = GComplex::new(&g, 2, vec![vec![0, 1]], vec![vec![1, 0]]).unwrap();
        assert_eq!(x.warnings().len(), 1);
        assert!(x.fixed_subcomplex(&g.full_subgroup()).is_empty());
        let sd = x.barycentric_subdivision(&g);
        assert_eq!(sd.vertex_count(), 3);
        assert!(sd.warnings().is_empty());
        let fixed = sd.fixed_subcomplex(&g.full_subgroup());
        assert_eq!(fixed.len(), 1);
        assert_eq!(sd.simplices().len(), 3 + 2);
    }
}
