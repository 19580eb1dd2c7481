//! Finite categories with explicit hom-sets and a composition table.
//!
//! Layout: arrow `i` for `i < objects.len()` is the identity of object `i`;
//! every other arrow follows. Exporters and importers rely on this.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

/// Object count above which [`find_isomorphism`] refuses to search.
pub const ISOMORPHISM_OBJECT_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("arrow {arrow} has an endpoint outside the object list")]
    DanglingArrow { arrow: usize },
    #[error("composite of arrows {left} and {right} is missing")]
    MissingComposite { left: usize, right: usize },
    #[error("composite {left}∘{right} = {result} has the wrong endpoints")]
    BadComposite { left: usize, right: usize, result: usize },
    #[error("arrows {left} and {right} are not composable")]
    NotComposable { left: usize, right: usize },
    #[error("associativity fails on ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("identity of object {object} is not a two-sided unit")]
    NotUnital { object: usize },
    #[error("isomorphism search limited to {limit} objects")]
    TooLarge { limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectInfo {
    pub label: String,
    pub subgroup_class: Option<usize>,
    pub component: Option<usize>,
}

impl ObjectInfo {
    pub fn labeled(label: impl Into<String>) -> Self {
        ObjectInfo { label: label.into(), subgroup_class: None, component: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowInfo {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

#[derive(Clone, Debug, Default)]
pub struct FiniteCategory {
    objects: Vec<ObjectInfo>,
    arrows: Vec<ArrowInfo>,
    compose: HashMap<(usize, usize), usize>,
    hom: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Incremental construction; [`CategoryBuilder::finish`] validates.
pub struct CategoryBuilder {
    objects: Vec<ObjectInfo>,
    arrows: Vec<ArrowInfo>,
    compose: HashMap<(usize, usize), usize>,
    identity_labels: Vec<String>,
}

impl CategoryBuilder {
    /// Starts a category on these objects. Identities get the given labels.
    pub fn new(objects: Vec<ObjectInfo>, identity_labels: Vec<String>) -> Self {
        assert_eq!(objects.len(), identity_labels.len());
        CategoryBuilder { objects, arrows: Vec::new(), compose: HashMap::new(), identity_labels }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Adds a non-identity arrow and returns its final arrow index.
    pub fn add_arrow(&mut self, src: usize, dst: usize, label: impl Into<String>) -> usize {
        self.arrows.push(ArrowInfo { src, dst, label: label.into() });
        self.objects.len() + self.arrows.len() - 1
    }

    /// Records `left ∘ right = result` for non-identity arrows. Composites
    /// with identities are filled in automatically.
    pub fn set_composite(&mut self, left: usize, right: usize, result: usize) {
        self.compose.insert((left, right), result);
    }

    pub fn finish(self) -> Result<FiniteCategory, CategoryError> {
        let n = self.objects.len();
        let mut arrows: Vec<ArrowInfo> = self
            .identity_labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| ArrowInfo { src: i, dst: i, label })
            .collect();
        arrows.extend(self.arrows);
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= n || a.dst >= n {
                return Err(CategoryError::DanglingArrow { arrow: i });
            }
        }
        let mut compose = self.compose;
        for (i, a) in arrows.iter().enumerate() {
            compose.insert((a.dst, i), i);
            compose.insert((i, a.src), i);
        }
        let mut hom: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            hom.entry((a.src, a.dst)).or_default().push(i);
        }
        let cat = FiniteCategory { objects: self.objects, arrows, compose, hom };
        cat.validate()?;
        Ok(cat)
    }
}

impl FiniteCategory {
    pub fn empty() -> Self {
        FiniteCategory::default()
    }

    pub fn objects(&self) -> &[ObjectInfo] {
        &self.objects
    }

    pub fn arrows(&self) -> &[ArrowInfo] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        object
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        arrow < self.objects.len()
    }

    pub fn hom(&self, src: usize, dst: usize) -> &[usize] {
        self.hom.get(&(src, dst)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `left ∘ right`
    pub fn compose(&self, left: usize, right: usize) -> Result<usize, CategoryError> {
        if self.arrows[right].dst != self.arrows[left].src {
            return Err(CategoryError::NotComposable { left, right });
        }
        self.compose
            .get(&(left, right))
            .copied()
            .ok_or(CategoryError::MissingComposite { left, right })
    }

    /// Every composable pair of arrows `(left, right)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.arrows.len()).flat_map(move |right| {
            let mid = self.arrows[right].dst;
            self.hom
                .range((mid, 0)..(mid + 1, 0))
                .flat_map(|(_, lefts)| lefts.iter().copied())
                .map(move |left| (left, right))
        })
    }

    fn outgoing(&self, object: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom.range((object, 0)..(object + 1, 0)).flat_map(|(_, v)| v.iter().copied())
    }

    /// Arrows `f` with an inverse.
    pub fn is_isomorphism(&self, arrow: usize) -> bool {
        let a = &self.arrows[arrow];
        self.hom(a.dst, a.src).iter().any(|&g| {
            self.compose.get(&(g, arrow)) == Some(&a.src) && self.compose.get(&(arrow, g)) == Some(&a.dst)
        })
    }

    /// Number of invertible endomorphisms of `object`.
    pub fn aut_order(&self, object: usize) -> usize {
        self.hom(object, object).iter().filter(|&&f| self.is_isomorphism(f)).count()
    }

    /// Checks composite endpoints, unit laws and associativity exhaustively.
    pub fn validate(&self) -> Result<(), CategoryError> {
        let pairs: Vec<(usize, usize)> = self.composable_pairs().collect();
        for &(left, right) in &pairs {
            let result = self.compose(left, right)?;
            let r = &self.arrows[result];
            if r.src != self.arrows[right].src || r.dst != self.arrows[left].dst {
                return Err(CategoryError::BadComposite { left, right, result });
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.compose(a.dst, i)? != i || self.compose(i, a.src)? != i {
                return Err(CategoryError::NotUnital { object: a.src });
            }
        }
        for &(b, a) in &pairs {
            let ba = self.compose(b, a)?;
            for c in self.outgoing(self.arrows[b].dst).collect::<Vec<_>>() {
                let cb = self.compose(c, b)?;
                if self.compose(c, ba)? != self.compose(cb, a)? {
                    return Err(CategoryError::NotAssociative { a, b, c });
                }
            }
        }
        Ok(())
    }
}

/// Object and arrow maps between two finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("map sizes do not match the source category")]
    Shape,
    #[error("arrow {0} is sent outside the image hom-set")]
    Endpoints(usize),
    #[error("identity of object {0} is not preserved")]
    Identity(usize),
    #[error("composite {left}∘{right} is not preserved")]
    Composition { left: usize, right: usize },
}

impl Functor {
    pub fn identity(cat: &FiniteCategory) -> Self {
        Functor {
            object_map: (0..cat.object_count()).collect(),
            arrow_map: (0..cat.arrow_count()).collect(),
        }
    }

    /// Exhaustive functoriality check.
    pub fn check(&self, src: &FiniteCategory, dst: &FiniteCategory) -> Result<(), FunctorError> {
        if self.object_map.len() != src.object_count() || self.arrow_map.len() != src.arrow_count() {
            return Err(FunctorError::Shape);
        }
        for (i, a) in src.arrows().iter().enumerate() {
            let image = self.arrow_map[i];
            if image >= dst.arrow_count() {
                return Err(FunctorError::Endpoints(i));
            }
            let b = &dst.arrows()[image];
            if b.src != self.object_map[a.src] || b.dst != self.object_map[a.dst] {
                return Err(FunctorError::Endpoints(i));
            }
        }
        for o in 0..src.object_count() {
            if self.arrow_map[src.identity(o)] != dst.identity(self.object_map[o]) {
                return Err(FunctorError::Identity(o));
            }
        }
        for (left, right) in src.composable_pairs() {
            let lhs = self.arrow_map[src.compose(left, right).expect("validated source")];
            let rhs = dst
                .compose(self.arrow_map[left], self.arrow_map[right])
                .map_err(|_| FunctorError::Composition { left, right })?;
            if lhs != rhs {
                return Err(FunctorError::Composition { left, right });
            }
        }
        Ok(())
    }

    /// A functor that is bijective on objects and arrows.
    pub fn is_isomorphism(&self, src: &FiniteCategory, dst: &FiniteCategory) -> bool {
        fn bijective(map: &[usize], n: usize) -> bool {
            let mut hit = vec![false; n];
            map.len() == n
                && map.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
        }
        self.check(src, dst).is_ok()
            && bijective(&self.object_map, dst.object_count())
            && bijective(&self.arrow_map, dst.arrow_count())
    }
}

/// Backtracking search for an isomorphism of categories `a → b`. Candidates
/// are tried in index order, so an identity witness is found first whenever
/// one exists.
pub fn find_isomorphism(a: &FiniteCategory, b: &FiniteCategory) -> Result<Option<Functor>, CategoryError> {
    if a.object_count() > ISOMORPHISM_OBJECT_LIMIT || b.object_count() > ISOMORPHISM_OBJECT_LIMIT {
        return Err(CategoryError::TooLarge { limit: ISOMORPHISM_OBJECT_LIMIT });
    }
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return Ok(None);
    }
    let sig_a: Vec<_> = (0..a.object_count()).map(|o| object_signature(a, o)).collect();
    let sig_b: Vec<_> = (0..b.object_count()).map(|o| object_signature(b, o)).collect();
    let mut object_map = vec![usize::MAX; a.object_count()];
    let mut used = vec![false; b.object_count()];
    Ok(search_objects(a, b, &sig_a, &sig_b, 0, &mut object_map, &mut used))
}

type Signature = (Vec<usize>, Vec<usize>, usize, usize);

fn object_signature(c: &FiniteCategory, o: usize) -> Signature {
    let n = c.object_count();
    let mut out: Vec<usize> = (0..n).map(|t| c.hom(o, t).len()).collect();
    let mut inc: Vec<usize> = (0..n).map(|s| c.hom(s, o).len()).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (out, inc, c.hom(o, o).len(), c.aut_order(o))
}

fn search_objects(
    a: &FiniteCategory,
    b: &FiniteCategory,
    sig_a: &[Signature],
    sig_b: &[Signature],
    next: usize,
    object_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Functor> {
    if next == a.object_count() {
        return ArrowSearch::new(a, b, object_map.clone()).run();
    }
    for cand in 0..b.object_count() {
        if used[cand] || sig_a[next] != sig_b[cand] {
            continue;
        }
        let consistent = (0..next).all(|k| {
            a.hom(next, k).len() == b.hom(cand, object_map[k]).len()
                && a.hom(k, next).len() == b.hom(object_map[k], cand).len()
        }) && a.hom(next, next).len() == b.hom(cand, cand).len();
        if !consistent {
            continue;
        }
        object_map[next] = cand;
        used[cand] = true;
        if let Some(f) = search_objects(a, b, sig_a, sig_b, next + 1, object_map, used) {
            return Some(f);
        }
        used[cand] = false;
        object_map[next] = usize::MAX;
    }
    None
}

struct ArrowSearch<'c> {
    a: &'c FiniteCategory,
    b: &'c FiniteCategory,
    object_map: Vec<usize>,
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    trail: Vec<usize>,
    by_src: Vec<Vec<usize>>,
    by_dst: Vec<Vec<usize>>,
}

impl<'c> ArrowSearch<'c> {
    fn new(a: &'c FiniteCategory, b: &'c FiniteCategory, object_map: Vec<usize>) -> Self {
        let mut by_src = vec![Vec::new(); a.object_count()];
        let mut by_dst = vec![Vec::new(); a.object_count()];
        for (i, arr) in a.arrows().iter().enumerate() {
            by_src[arr.src].push(i);
            by_dst[arr.dst].push(i);
        }
        ArrowSearch {
            a,
            b,
            object_map,
            fwd: vec![None; a.arrow_count()],
            bwd: vec![None; b.arrow_count()],
            trail: Vec::new(),
            by_src,
            by_dst,
        }
    }

    fn run(mut self) -> Option<Functor> {
        for o in 0..self.a.object_count() {
            let target = self.b.identity(self.object_map[o]);
            if !self.assign(self.a.identity(o), target) {
                return None;
            }
        }
        if self.solve() {
            Some(Functor {
                object_map: self.object_map,
                arrow_map: self.fwd.into_iter().map(|x| x.expect("complete assignment")).collect(),
            })
        } else {
            None
        }
    }

    fn solve(&mut self) -> bool {
        let Some(f) = (0..self.a.arrow_count()).find(|&i| self.fwd[i].is_none()) else {
            return true;
        };
        let arr = &self.a.arrows()[f];
        let candidates: Vec<usize> = self
            .b
            .hom(self.object_map[arr.src], self.object_map[arr.dst])
            .iter()
            .copied()
            .filter(|&g| self.bwd[g].is_none())
            .collect();
        for g in candidates {
            let mark = self.trail.len();
            if self.assign(f, g) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("trail entry");
            let g = self.fwd[f].take().expect("assigned arrow");
            self.bwd[g] = None;
        }
    }

    /// Assigns `f ↦ g` and propagates every forced composite.
    fn assign(&mut self, f: usize, g: usize) -> bool {
        let mut queue = vec![(f, g)];
        while let Some((f, g)) = queue.pop() {
            match (self.fwd[f], self.bwd[g]) {
                (Some(x), _) if x == g => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                (None, None) => {}
            }
            self.fwd[f] = Some(g);
            self.bwd[g] = Some(f);
            self.trail.push(f);

            let (src, dst) = (self.a.arrows()[f].src, self.a.arrows()[f].dst);
            for &left in &self.by_src[dst] {
                if let Some(gl) = self.fwd[left] {
                    let comp = self.a.compose(left, f).expect("validated");
                    let image = self.b.compose(gl, g).expect("validated");
                    match self.fwd[comp] {
                        Some(x) if x != image => return false,
                        Some(_) => {}
                        None => queue.push((comp, image)),
                    }
                }
            }
            for &right in &self.by_dst[src] {
                if let Some(gr) = self.fwd[right] {
                    let comp = self.a.compose(f, right).expect("validated");
                    let image = self.b.compose(g, gr).expect("validated");
                    match self.fwd[comp] {
                        Some(x) if x != image => return false,
                        Some(_) => {}
                        None => queue.push((comp, image)),
                    }
                }
            }
        }
        true
    }
}
