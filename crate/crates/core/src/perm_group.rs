//! Finite permutation groups and subgroup-level primitives.
//!
//! Groups are stored with their full element list in a canonical order
//! (lexicographic on image arrays, so the identity is always element `0`)
//! together with a multiplication table. Everything downstream refers to
//! elements by their index in that list.
//!
//! Composition convention: `(p * q)(i) = p(q(i))`, i.e. `q` acts first.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Hard cap on group order. Lattice enumeration is roughly exponential in
/// the number of subgroups, so anything larger is refused outright.
pub const MAX_GROUP_ORDER: usize = 1024;

/// Orders above this are accepted but logged as slow.
pub const WARN_GROUP_ORDER: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group degree must be at least 1")]
    ZeroDegree,
    #[error("generator {index}: {reason}")]
    MalformedGenerator { index: usize, reason: String },
    #[error("group order exceeds the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("cannot parse cycle notation {text:?}: {reason}")]
    CycleSyntax { text: String, reason: String },
}

/// A bijection of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(format!("image {img} out of range for degree {n}"));
            }
            if seen[img] {
                return Err(format!("image {img} appears twice; not a bijection"));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Parses cycle notation such as `"(0 1)(2 3)"` or `"()"`. Points are
    /// separated by whitespace or commas.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::CycleSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let body = &rest[1..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err("non-integer point")))
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &p) in points.iter().enumerate() {
                if p >= degree {
                    return Err(err(&format!("point {p} out of range for degree {degree}")));
                }
                if touched[p] {
                    return Err(err(&format!("point {p} appears in more than one cycle")));
                }
                touched[p] = true;
                images[p] = points[(k + 1) % points.len()];
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Disjoint-cycle notation with fixed points omitted; `"()"` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            let parts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

/// A finite permutation group with its cached, canonically ordered element
/// list and multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Closure of raw image arrays. Errors name the offending generator.
    pub fn from_images(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let perms = generators
            .iter()
            .enumerate()
            .map(|(index, images)| {
                if images.len() != degree {
                    return Err(GroupError::MalformedGenerator {
                        index,
                        reason: format!("has {} images, expected {degree}", images.len()),
                    });
                }
                Permutation::new(images.clone())
                    .map_err(|reason| GroupError::MalformedGenerator { index, reason })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(degree, perms)
    }

    /// Smallest group containing `generators`.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::MalformedGenerator {
                    index,
                    reason: format!("has degree {}, expected {degree}", g.degree()),
                });
            }
        }

        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = s.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge { cap: MAX_GROUP_ORDER });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        if elements.len() > WARN_GROUP_ORDER {
            log::warn!(
                "group of order {} is above {WARN_GROUP_ORDER}; subgroup enumeration may be slow",
                elements.len()
            );
        }

        let lookup: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                table[a * n + b] = lookup[&pa.compose(pb)] as u32;
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("group element without inverse"))
            .collect();
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();

        Ok(FiniteGroup {
            degree,
            generators,
            generator_indices,
            elements,
            lookup,
            table,
            inverses,
        })
    }

    /// The trivial group acting on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree.max(1), Vec::new()).expect("trivial group is always valid")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators, in input order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub const fn identity(&self) -> usize {
        0
    }

    /// Index of `elements[a] * elements[b]`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_by(&self, gens: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor];
            cursor += 1;
            for &s in gens {
                let y = self.mul(s, x);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { members: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Greedy small generating set for a subgroup, picking members in
    /// ascending index order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &m in &h.members {
            if !current.contains(m) {
                gens.push(m);
                current = self.generated_by(&gens);
                if current.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// `g H g⁻¹`
    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = h.members.iter().map(|&x| self.conjugate(g, x)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    /// Checks that `members` is a subgroup (closed, contains identity).
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        set.contains(&0)
            && members
                .iter()
                .all(|&a| set.contains(&self.inv(a)) && members.iter().all(|&b| set.contains(&self.mul(a, b))))
    }
}

/// Failure of generator images to respect the group's relations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("generator {generator} images disagree on element {element}: relations are not respected")]
pub struct RelationError {
    pub generator: usize,
    pub element: usize,
}

/// Extends per-generator images to every group element by walking the
/// Cayley graph, checking every edge. Success means `g ↦ images[g]` is a
/// homomorphism for the supplied composition `mul(a, b) = a ∘ b`.
pub fn extend_to_elements<T, F>(
    group: &FiniteGroup,
    generator_images: &[T],
    identity: T,
    mul: F,
) -> Result<Vec<T>, RelationError>
where
    T: Clone + PartialEq,
    F: Fn(&T, &T) -> T,
{
    assert_eq!(generator_images.len(), group.generator_indices().len());
    let mut images: Vec<Option<T>> = vec![None; group.order()];
    images[group.identity()] = Some(identity);
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let image_x = images[x].clone().expect("queued elements have images");
        for (k, &s) in group.generator_indices().iter().enumerate() {
            let y = group.mul(s, x);
            let candidate = mul(&generator_images[k], &image_x);
            match &images[y] {
                None => {
                    images[y] = Some(candidate);
                    queue.push_back(y);
                }
                Some(existing) if *existing != candidate => {
                    return Err(RelationError { generator: k, element: y });
                }
                Some(_) => {}
            }
        }
    }
    Ok(images.into_iter().map(|x| x.expect("generators reach every element")).collect())
}

/// A subgroup, stored as a sorted list of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a member list. The caller guarantees closure; see
    /// [`FiniteGroup::is_subgroup`].
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// A conjugacy class of subgroups with its canonical (smallest member list)
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub class_index: usize,
    pub representative: Subgroup,
    pub conjugates: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    /// Short label used in exported categories, e.g. `H2[3]`.
    pub fn label(&self) -> String {
        format!("H{}[{}]", self.class_index, self.order())
    }
}

/// Every subgroup of a group, sorted by `(order, member list)`.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    // Cyclic subgroups seed the search; each one also contributes a single
    // generator used to extend larger subgroups.
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen_cyclic: HashSet<Subgroup> = HashSet::new();
    for g in 0..group.order() {
        let c = group.generated_by(&[g]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((g, c));
        }
    }

    let mut known: HashSet<Subgroup> = HashSet::new();
    let mut layer: Vec<(Vec<usize>, Subgroup)> = Vec::new();
    for (g, c) in &cyclic {
        known.insert(c.clone());
        layer.push((vec![*g], c.clone()));
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (gens, h) in &layer {
            for (g, c) in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let mut extended = gens.clone();
                extended.push(*g);
                let k = group.generated_by(&extended);
                if known.insert(k.clone()) {
                    next.push((extended, k));
                }
            }
        }
        layer = next;
    }

    let mut out: Vec<Subgroup> = known.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Subgroups together with their partition into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    pub classes: Vec<SubgroupClass>,
    /// Class index of each entry of `subgroups`.
    pub class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Self {
        let subgroups = all_subgroups(group);
        let position: HashMap<&Subgroup, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        // Subgroups are visited in sorted order, so the first member seen of
        // each orbit is its minimal member list.
        for (i, h) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let class_index = classes.len();
            let mut orbit: Vec<usize> = Vec::new();
            for g in 0..group.order() {
                let conj = group.conjugate_subgroup(g, h);
                let j = position[&conj];
                if class_of[j] == usize::MAX {
                    class_of[j] = class_index;
                    orbit.push(j);
                }
            }
            orbit.sort_unstable();
            classes.push(SubgroupClass {
                class_index,
                representative: h.clone(),
                conjugates: orbit.iter().map(|&j| subgroups[j].clone()).collect(),
            });
        }
        SubgroupLattice { subgroups, classes, class_of }
    }

    /// Class index of an arbitrary subgroup of the group.
    pub fn class_index_of(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups
            .binary_search_by(|s| s.order().cmp(&h.order()).then_with(|| s.members.cmp(&h.members)))
            .ok()
            .map(|i| self.class_of[i])
    }
}

/// Conjugacy classes of subgroups, ordered by representative.
pub fn conjugacy_classes_of_subgroups(group: &FiniteGroup) -> Vec<SubgroupClass> {
    SubgroupLattice::new(group).classes
}

/// `{g | g H0 g⁻¹ ⊆ H1}` as sorted element indices.
pub fn transporter(group: &FiniteGroup, h0: &Subgroup, h1: &Subgroup) -> Vec<usize> {
    if h0.order() > h1.order() || !h1.order().is_multiple_of(h0.order()) {
        return Vec::new();
    }
    (0..group.order())
        .filter(|&g| h0.members.iter().all(|&h| h1.contains(group.conjugate(g, h))))
        .collect()
}

/// Whether some conjugate of `h0` lies in `h1`.
pub fn is_subconjugate(group: &FiniteGroup, h0: &Subgroup, h1: &Subgroup) -> bool {
    h1.order().is_multiple_of(h0.order())
        && (0..group.order()).any(|g| h0.members.iter().all(|&h| h1.contains(group.conjugate(g, h))))
}

pub fn normalizer(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    Subgroup::from_members(transporter(group, h, h))
}

/// Left cosets `nH` of `h` inside `within`, each as a sorted member list,
/// ordered by their smallest element.
pub fn left_cosets(group: &FiniteGroup, within: &Subgroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut covered = HashSet::new();
    let mut cosets = Vec::new();
    for &n in &within.members {
        if covered.contains(&n) {
            continue;
        }
        let mut coset: Vec<usize> = h.members.iter().map(|&x| group.mul(n, x)).collect();
        coset.sort_unstable();
        covered.extend(coset.iter().copied());
        cosets.push(coset);
    }
    cosets
}

/// `N(H)/H` realised as a permutation group on the left cosets of `H` in
/// `N(H)`, acting by left multiplication.
pub fn weyl_group(group: &FiniteGroup, h: &Subgroup) -> FiniteGroup {
    let n = normalizer(group, h);
    let cosets = left_cosets(group, &n, h);
    let coset_of: HashMap<usize, usize> = cosets
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
        .collect();
    let perms = group
        .generating_set(&n)
        .into_iter()
        .map(|g| {
            let images = cosets.iter().map(|c| coset_of[&group.mul(g, c[0])]).collect();
            Permutation::new(images).expect("left multiplication permutes cosets")
        })
        .collect();
    FiniteGroup::generate(cosets.len(), perms).expect("quotient is no larger than the group")
}
