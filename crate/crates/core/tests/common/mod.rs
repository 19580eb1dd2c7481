//! Brute-force oracles shared by the integration tests. They work on raw
//! image vectors and avoid the library's multiplication tables, lattices and
//! union-find so that agreement is meaningful.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use phasediag_core::gspace::GComplex;
use phasediag_core::perm_group::FiniteGroup;

pub type Perm = Vec<usize>;

/// `(p∘q)(i) = p(q(i))`
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn elements(group: &FiniteGroup) -> Vec<Perm> {
    group.elements().iter().map(|p| p.images().to_vec()).collect()
}

fn closure(seed: &[Perm], degree: usize) -> BTreeSet<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::from([(0..degree).collect()]);
    let mut queue: VecDeque<Perm> = set.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for s in seed {
            let y = compose(&x, s);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// All subgroups by closing every subset of at most two elements. Every
/// subgroup of the groups used in the tests (order ≤ 24, inside S₄) is
/// generated by two elements.
pub fn subgroups_by_pairs(group: &FiniteGroup) -> BTreeSet<BTreeSet<Perm>> {
    let els = elements(group);
    let d = group.degree();
    let mut out = BTreeSet::new();
    for a in &els {
        for b in &els {
            out.insert(closure(&[a.clone(), b.clone()], d));
        }
    }
    out
}

/// All subgroups by testing every subset for closure; exponential, so only
/// for `|G| ≤ 12`.
pub fn subgroups_by_subsets(group: &FiniteGroup) -> BTreeSet<BTreeSet<Perm>> {
    let els = elements(group);
    let n = els.len();
    assert!(n <= 12, "subset enumeration is exponential");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<&Perm> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &els[i]).collect();
        let set: BTreeSet<&Perm> = subset.iter().copied().collect();
        let closed = subset.iter().all(|a| subset.iter().all(|b| set.contains(&compose(a, b))));
        if closed {
            out.insert(subset.into_iter().cloned().collect());
        }
    }
    out
}

/// Number of conjugacy classes of subgroups.
pub fn class_count(group: &FiniteGroup) -> usize {
    let els = elements(group);
    let mut seen: BTreeSet<BTreeSet<Perm>> = BTreeSet::new();
    let mut classes = 0;
    for h in subgroups_by_pairs(group) {
        if seen.contains(&h) {
            continue;
        }
        classes += 1;
        for g in &els {
            let gi = inverse(g);
            seen.insert(h.iter().map(|x| compose(&compose(g, x), &gi)).collect());
        }
    }
    classes
}

fn left_coset(g: &Perm, h: &[Perm]) -> BTreeSet<Perm> {
    h.iter().map(|x| compose(g, x)).collect()
}

/// Number of G-equivariant maps `G/H₀ → G/H₁`: a map is fixed by the image
/// `yH₁` of `eH₀`, and `gH₀ ↦ gyH₁` is well defined iff every `h ∈ H₀`
/// fixes `yH₁`.
pub fn equivariant_map_count(group: &FiniteGroup, h0: &[usize], h1: &[usize]) -> usize {
    let els = elements(group);
    let h0: Vec<Perm> = h0.iter().map(|&i| els[i].clone()).collect();
    let h1: Vec<Perm> = h1.iter().map(|&i| els[i].clone()).collect();
    let targets: BTreeSet<BTreeSet<Perm>> = els.iter().map(|y| left_coset(y, &h1)).collect();
    targets
        .iter()
        .filter(|coset| {
            let y = coset.iter().next().unwrap();
            h0.iter().all(|h| left_coset(&compose(h, y), &h1) == **coset)
        })
        .count()
}

/// Isomorphism test for groups given by multiplication tables (identity
/// at index 0 in both), by extending generator images.
pub fn tables_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let order = |t: &[Vec<usize>], x: usize| {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = t[y][x];
            k += 1;
        }
        k
    };
    let generated = |t: &[Vec<usize>], gens: &[usize]| {
        let mut seen = vec![false; t.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = t[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.iter().filter(|&&s| s).count()
    };
    let mut gens = Vec::new();
    while generated(a, &gens) < n {
        let next = (0..n).find(|&x| generated(a, &[gens.clone(), vec![x]].concat()) > generated(a, &gens)).unwrap();
        gens.push(next);
    }
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<usize> = choice.clone();
        if gens.iter().zip(&images).all(|(&g, &h)| order(a, g) == order(b, h)) {
            let mut map: HashMap<usize, usize> = HashMap::from([(0, 0)]);
            let mut queue = VecDeque::from([0]);
            let mut ok = true;
            while let Some(x) = queue.pop_front() {
                for (&g, &h) in gens.iter().zip(&images) {
                    let (y, fy) = (a[x][g], b[map[&x]][h]);
                    match map.get(&y) {
                        Some(&v) if v != fy => ok = false,
                        Some(_) => {}
                        None => {
                            map.insert(y, fy);
                            queue.push_back(y);
                        }
                    }
                }
            }
            let image: BTreeSet<usize> = map.values().copied().collect();
            if ok && image.len() == n && (0..n).all(|x| (0..n).all(|y| map[&a[x][y]] == b[map[&x]][map[&y]])) {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < n {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Vertices fixed by every listed element.
pub fn fixed_vertices(x: &GComplex, h: &[usize]) -> Vec<usize> {
    (0..x.vertex_count()).filter(|&v| h.iter().all(|&g| x.act(g, v) == v)).collect()
}

/// Components of the full subcomplex on `vertices`, by breadth-first search
/// over the listed simplices.
pub fn components_on(x: &GComplex, vertices: &[usize]) -> BTreeSet<BTreeSet<usize>> {
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in x.simplices() {
        if s.iter().all(|v| inside.contains(v)) {
            for &a in s {
                for &b in s {
                    adj.entry(a).or_default().push(b);
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for &v in vertices {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = BTreeSet::from([v]);
        seen.insert(v);
        let mut queue = VecDeque::from([v]);
        while let Some(a) = queue.pop_front() {
            for &b in adj.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(b) {
                    comp.insert(b);
                    queue.push_back(b);
                }
            }
        }
        out.insert(comp);
    }
    out
}

/// `|{n ∈ N(H) : n·c = c}| / |H|`, with the normalizer found by brute force.
pub fn weyl_stabilizer_order(group: &FiniteGroup, x: &GComplex, h: &[usize], component: &BTreeSet<usize>) -> usize {
    let els = elements(group);
    let hset: BTreeSet<Perm> = h.iter().map(|&i| els[i].clone()).collect();
    let count = (0..els.len())
        .filter(|&g| {
            let gi = inverse(&els[g]);
            let normalizes = hset.iter().all(|y| hset.contains(&compose(&compose(&els[g], y), &gi)));
            let v = *component.iter().next().unwrap();
            normalizes && component.contains(&x.act(g, v))
        })
        .count();
    assert_eq!(count % h.len(), 0);
    count / h.len()
}
